//! Gate-level circuit representation.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

/// One gate application. `operands` holds one or two distinct qubit indices.
#[derive(Clone, Debug, PartialEq)]
pub struct GateApp {
    pub kind: String,
    pub operands: Vec<usize>,
    pub params: Vec<f64>,
}

impl GateApp {
    pub fn new(kind: &str, operands: &[usize], params: &[f64]) -> Self {
        Self {
            kind: kind.to_string(),
            operands: operands.to_vec(),
            params: params.to_vec(),
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        self.operands.len() == 2
    }
}

/// A unitary circuit on `num_qubits` wires, starting from `|0…0⟩`.
///
/// Gates are kept in source order, so the gates touching any one wire appear in
/// that wire's time order.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitIR {
    pub name: String,
    pub num_qubits: usize,
    pub gates: Vec<GateApp>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CircuitError {
    #[error("gate {index} ({kind}) has operand {qubit} outside 0..{num_qubits}")]
    OperandOutOfRange {
        index: usize,
        kind: String,
        qubit: usize,
        num_qubits: usize,
    },
    #[error("gate {index} ({kind}) has {arity} operands; only 1 and 2 are supported")]
    BadArity {
        index: usize,
        kind: String,
        arity: usize,
    },
    #[error("gate {index} ({kind}) applies to the same qubit twice")]
    DuplicateOperand { index: usize, kind: String },
}

impl CircuitIR {
    pub fn new(name: &str, num_qubits: usize) -> Self {
        Self {
            name: name.to_string(),
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, kind: &str, operands: &[usize], params: &[f64]) -> &mut Self {
        self.gates.push(GateApp::new(kind, operands, params));
        self
    }

    pub fn two_qubit_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Indices of the gates touching `qubit`, in time order.
    pub fn wire(&self, qubit: usize) -> Vec<usize> {
        self.gates
            .iter()
            .enumerate()
            .filter(|(_, g)| g.operands.contains(&qubit))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn validate(&self) -> Result<(), CircuitError> {
        for (index, g) in self.gates.iter().enumerate() {
            if !(1..=2).contains(&g.operands.len()) {
                return Err(CircuitError::BadArity {
                    index,
                    kind: g.kind.clone(),
                    arity: g.operands.len(),
                });
            }
            if let Some(&qubit) = g.operands.iter().find(|&&q| q >= self.num_qubits) {
                return Err(CircuitError::OperandOutOfRange {
                    index,
                    kind: g.kind.clone(),
                    qubit,
                    num_qubits: self.num_qubits,
                });
            }
            if g.operands.len() == 2 && g.operands[0] == g.operands[1] {
                return Err(CircuitError::DuplicateOperand {
                    index,
                    kind: g.kind.clone(),
                });
            }
        }
        Ok(())
    }

    /// Canonical OpenQASM 2.0 text: a single register `q`, one gate per line,
    /// parameters printed with round-trip precision.
    pub fn to_qasm(&self) -> String {
        let mut out = String::new();
        out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
        let _ = writeln!(out, "qreg q[{}];", self.num_qubits);
        for g in &self.gates {
            out.push_str(&g.kind);
            if !g.params.is_empty() {
                out.push('(');
                for (i, p) in g.params.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    let _ = write!(out, "{p:?}");
                }
                out.push(')');
            }
            for (i, q) in g.operands.iter().enumerate() {
                out.push_str(if i == 0 { " " } else { "," });
                let _ = write!(out, "q[{q}]");
            }
            out.push_str(";\n");
        }
        out
    }
}

/// Parameter and qubit counts of the built-in (qelib1) gates.
pub(crate) fn builtin_signature(name: &str) -> Option<(usize, usize)> {
    Some(match name {
        "id" | "x" | "y" | "z" | "h" | "s" | "sdg" | "t" | "tdg" | "sx" | "sxdg" => (0, 1),
        "rx" | "ry" | "rz" | "u1" | "p" => (1, 1),
        "u2" => (2, 1),
        "u3" | "u" | "U" => (3, 1),
        "cx" | "CX" | "cy" | "cz" | "ch" | "swap" => (0, 2),
        "crx" | "cry" | "crz" | "cu1" | "cp" | "rxx" | "ryy" | "rzz" => (1, 2),
        "cu3" => (3, 2),
        "ccx" | "cswap" | "rccx" => (0, 3),
        "c3x" | "rc3x" | "c3sqrtx" => (0, 4),
        "c4x" => (0, 5),
        _ => return None,
    })
}

/// Maps spelling variants onto one canonical gate name.
pub(crate) fn canonical_name(name: &str) -> &str {
    match name {
        "U" | "u" => "u3",
        "CX" => "cx",
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_rejects_bad_operands() {
        let mut c = CircuitIR::new("t", 2);
        c.push("cx", &[0, 0], &[]);
        assert!(matches!(
            c.validate(),
            Err(CircuitError::DuplicateOperand { .. })
        ));
        let mut c = CircuitIR::new("t", 2);
        c.push("h", &[2], &[]);
        assert!(matches!(
            c.validate(),
            Err(CircuitError::OperandOutOfRange { qubit: 2, .. })
        ));
    }

    #[test]
    fn wire_lists_gates_in_order() {
        let mut c = CircuitIR::new("t", 3);
        c.push("cx", &[0, 1], &[])
            .push("h", &[2], &[])
            .push("cx", &[1, 2], &[]);
        assert_eq!(c.wire(1), alloc::vec![0, 2]);
        assert_eq!(c.wire(2), alloc::vec![1, 2]);
    }
}
