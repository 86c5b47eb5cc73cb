//! OpenQASM 2.0 frontend.
//!
//! Accepts the dialect produced by transpilers for benchmark suites: `qreg` and
//! `creg` declarations, the qelib1 gate library, and user `gate` definitions,
//! which are expanded in place. `barrier` and terminal `measure` statements are
//! dropped. Multiple quantum registers are flattened in declaration order.

mod expr;
mod lexer;
mod parser;

use alloc::string::String;

use crate::circuit::CircuitIR;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unsupported gate `{name}`")]
    UnsupportedGate { line: usize, name: String },
    #[error("line {line}: gate applied to the same qubit twice")]
    DuplicateOperand { line: usize },
    #[error("line {line}: undeclared register `{name}`")]
    UndeclaredRegister { line: usize, name: String },
    #[error("line {line}: gate on qubit {qubit} after it was measured")]
    MidCircuitMeasurement { line: usize, qubit: usize },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::UnsupportedGate { line, .. }
            | ParseError::DuplicateOperand { line }
            | ParseError::UndeclaredRegister { line, .. }
            | ParseError::MidCircuitMeasurement { line, .. } => *line,
        }
    }
}

/// Parses OpenQASM 2.0 source into a [`CircuitIR`] named `"circuit"`.
pub fn parse_qasm(text: &str) -> Result<CircuitIR, ParseError> {
    parse_qasm_named(text, "circuit")
}

pub fn parse_qasm_named(text: &str, name: &str) -> Result<CircuitIR, ParseError> {
    let tokens = lexer::tokenize(text)?;
    parser::Parser::new(tokens).parse(name)
}
