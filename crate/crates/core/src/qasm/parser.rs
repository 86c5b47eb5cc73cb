use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::expr::{Expr, ExprParser};
use super::lexer::{Tok, Token};
use super::ParseError;
use crate::circuit::{builtin_signature, canonical_name, CircuitIR, GateApp};

struct GateDef {
    params: Vec<String>,
    qargs: Vec<String>,
    body: Vec<BodyStmt>,
}

struct BodyStmt {
    name: String,
    params: Vec<Expr>,
    args: Vec<String>,
    line: usize,
}

struct Arg {
    reg: String,
    index: Option<usize>,
    line: usize,
}

struct Register {
    name: String,
    offset: usize,
    size: usize,
}

pub(super) struct Parser {
    toks: Vec<Token>,
    pos: usize,
    qregs: Vec<Register>,
    cregs: Vec<Register>,
    defs: BTreeMap<String, GateDef>,
    opaque: Vec<String>,
    gates: Vec<GateApp>,
    measured: Vec<bool>,
}

impl Parser {
    pub(super) fn new(toks: Vec<Token>) -> Self {
        Self {
            toks,
            pos: 0,
            qregs: Vec::new(),
            cregs: Vec::new(),
            defs: BTreeMap::new(),
            opaque: Vec::new(),
            gates: Vec::new(),
            measured: Vec::new(),
        }
    }

    pub(super) fn parse(mut self, name: &str) -> Result<CircuitIR, ParseError> {
        if self.peek_ident() == Some("OPENQASM") {
            self.pos += 1;
            let line = self.line();
            match self.next() {
                Some(Tok::Real(v)) if (2.0..3.0).contains(&v) => {}
                Some(Tok::Int(2)) => {}
                _ => return Err(syntax(line, "only OpenQASM 2.x is supported")),
            }
            self.expect(';')?;
        }
        while self.pos < self.toks.len() {
            self.statement()?;
        }
        let num_qubits = self.qregs.iter().map(|r| r.size).sum();
        Ok(CircuitIR {
            name: name.to_string(),
            num_qubits,
            gates: self.gates,
        })
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        let line = self.line();
        let word = match self.next() {
            Some(Tok::Ident(w)) => w,
            Some(Tok::Sym(';')) => return Ok(()),
            other => return Err(syntax(line, &alloc::format!("unexpected token {other:?}"))),
        };
        match word.as_str() {
            "include" => {
                match self.next() {
                    Some(Tok::Str(_)) => {}
                    _ => return Err(syntax(line, "expected file name after include")),
                }
                self.expect(';')
            }
            "qreg" | "creg" => {
                let reg = self.ident()?;
                self.expect('[')?;
                let size = self.int()?;
                self.expect(']')?;
                self.expect(';')?;
                if self.qregs.iter().chain(&self.cregs).any(|r| r.name == reg) {
                    return Err(syntax(
                        line,
                        &alloc::format!("register `{reg}` declared twice"),
                    ));
                }
                if word == "qreg" {
                    let offset = self.measured.len();
                    self.measured.extend(core::iter::repeat_n(false, size));
                    self.qregs.push(Register {
                        name: reg,
                        offset,
                        size,
                    });
                } else {
                    self.cregs.push(Register {
                        name: reg,
                        offset: 0,
                        size,
                    });
                }
                Ok(())
            }
            "gate" => self.gate_definition(),
            "opaque" => {
                let name = self.ident()?;
                while self.peek() != Some(&Tok::Sym(';')) {
                    if self.next().is_none() {
                        return Err(syntax(line, "unterminated opaque declaration"));
                    }
                }
                self.pos += 1;
                self.opaque.push(name);
                Ok(())
            }
            "barrier" => {
                let args = self.arg_list()?;
                for a in &args {
                    self.resolve_qreg(a)?;
                }
                self.expect(';')
            }
            "measure" => {
                let src = self.arg()?;
                if self.next() != Some(Tok::Arrow) {
                    return Err(syntax(line, "expected `->` in measure"));
                }
                let dst = self.arg()?;
                self.expect(';')?;
                let qubits = self.resolve_qreg(&src)?;
                if !self.cregs.iter().any(|r| r.name == dst.reg) {
                    return Err(ParseError::UndeclaredRegister {
                        line,
                        name: dst.reg,
                    });
                }
                for q in qubits {
                    self.measured[q] = true;
                }
                Ok(())
            }
            "reset" | "if" => Err(ParseError::UnsupportedGate { line, name: word }),
            _ => self.application(word, line),
        }
    }

    fn gate_definition(&mut self) -> Result<(), ParseError> {
        let line = self.line();
        let name = self.ident()?;
        let mut params = Vec::new();
        if self.peek() == Some(&Tok::Sym('(')) {
            self.pos += 1;
            if self.peek() != Some(&Tok::Sym(')')) {
                loop {
                    params.push(self.ident()?);
                    if self.peek() == Some(&Tok::Sym(',')) {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
            }
            self.expect(')')?;
        }
        let mut qargs = vec![self.ident()?];
        while self.peek() == Some(&Tok::Sym(',')) {
            self.pos += 1;
            qargs.push(self.ident()?);
        }
        self.expect('{')?;
        let mut body = Vec::new();
        while self.peek() != Some(&Tok::Sym('}')) {
            let stmt_line = self.line();
            let gname = match self.next() {
                Some(Tok::Ident(g)) => g,
                None => return Err(syntax(line, "unterminated gate body")),
                other => {
                    return Err(syntax(
                        stmt_line,
                        &alloc::format!("unexpected token {other:?} in gate body"),
                    ))
                }
            };
            let exprs = if self.peek() == Some(&Tok::Sym('(')) {
                self.pos += 1;
                let e = self.exprs()?;
                self.expect(')')?;
                e
            } else {
                Vec::new()
            };
            let mut args = vec![self.ident()?];
            while self.peek() == Some(&Tok::Sym(',')) {
                self.pos += 1;
                args.push(self.ident()?);
            }
            self.expect(';')?;
            if let Some(bad) = args.iter().find(|a| !qargs.contains(a)) {
                return Err(syntax(
                    stmt_line,
                    &alloc::format!("unknown gate argument `{bad}`"),
                ));
            }
            if gname != "barrier" {
                body.push(BodyStmt {
                    name: gname,
                    params: exprs,
                    args,
                    line: stmt_line,
                });
            }
        }
        self.pos += 1;
        self.defs.insert(
            name,
            GateDef {
                params,
                qargs,
                body,
            },
        );
        Ok(())
    }

    fn application(&mut self, name: String, line: usize) -> Result<(), ParseError> {
        let exprs = if self.peek() == Some(&Tok::Sym('(')) {
            self.pos += 1;
            let e = self.exprs()?;
            self.expect(')')?;
            e
        } else {
            Vec::new()
        };
        let params = exprs
            .iter()
            .map(|e| e.eval(&[], line))
            .collect::<Result<Vec<f64>, _>>()?;
        let args = self.arg_list()?;
        self.expect(';')?;
        if args.is_empty() {
            return Err(syntax(line, "gate without operands"));
        }
        let resolved = args
            .iter()
            .map(|a| Ok((a.index.is_none(), self.resolve_qreg(a)?)))
            .collect::<Result<Vec<_>, ParseError>>()?;
        // Whole-register arguments broadcast element-wise.
        let width = resolved
            .iter()
            .filter(|(whole, _)| *whole)
            .map(|(_, qs)| qs.len())
            .max();
        match width {
            None => {
                let qubits: Vec<usize> = resolved.iter().map(|(_, qs)| qs[0]).collect();
                self.apply(&name, &params, &qubits, line, 0)
            }
            Some(width) => {
                if resolved
                    .iter()
                    .any(|(whole, qs)| *whole && qs.len() != width)
                {
                    return Err(syntax(line, "register size mismatch in broadcast"));
                }
                for k in 0..width {
                    let qubits: Vec<usize> = resolved
                        .iter()
                        .map(|(whole, qs)| if *whole { qs[k] } else { qs[0] })
                        .collect();
                    self.apply(&name, &params, &qubits, line, 0)?;
                }
                Ok(())
            }
        }
    }

    fn apply(
        &mut self,
        name: &str,
        params: &[f64],
        qubits: &[usize],
        line: usize,
        depth: usize,
    ) -> Result<(), ParseError> {
        if depth > 64 {
            return Err(syntax(line, "gate definitions nested too deeply"));
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(ParseError::DuplicateOperand { line });
            }
        }
        if let Some(def) = self.defs.get(name) {
            if def.params.len() != params.len() || def.qargs.len() != qubits.len() {
                return Err(syntax(
                    line,
                    &alloc::format!(
                        "gate `{name}` expects {} parameters and {} qubits",
                        def.params.len(),
                        def.qargs.len()
                    ),
                ));
            }
            let env: Vec<(String, f64)> = def
                .params
                .iter()
                .cloned()
                .zip(params.iter().copied())
                .collect();
            let mut expanded = Vec::with_capacity(def.body.len());
            for stmt in &def.body {
                let p = stmt
                    .params
                    .iter()
                    .map(|e| e.eval(&env, stmt.line))
                    .collect::<Result<Vec<f64>, _>>()?;
                let q: Vec<usize> = stmt
                    .args
                    .iter()
                    .map(|a| qubits[def.qargs.iter().position(|x| x == a).unwrap_or(0)])
                    .collect();
                expanded.push((stmt.name.clone(), p, q, stmt.line));
            }
            for (n, p, q, l) in expanded {
                self.apply(&n, &p, &q, l, depth + 1)?;
            }
            return Ok(());
        }
        if self.opaque.iter().any(|o| o == name) {
            return Err(ParseError::UnsupportedGate {
                line,
                name: name.to_string(),
            });
        }
        let Some((np, nq)) = builtin_signature(name) else {
            return Err(ParseError::UnsupportedGate {
                line,
                name: name.to_string(),
            });
        };
        if nq >= 3 {
            return Err(ParseError::UnsupportedGate {
                line,
                name: name.to_string(),
            });
        }
        if np != params.len() || nq != qubits.len() {
            return Err(syntax(
                line,
                &alloc::format!("gate `{name}` expects {np} parameters and {nq} qubits"),
            ));
        }
        if let Some(&qubit) = qubits.iter().find(|&&q| self.measured[q]) {
            return Err(ParseError::MidCircuitMeasurement { line, qubit });
        }
        self.gates
            .push(GateApp::new(canonical_name(name), qubits, params));
        Ok(())
    }

    fn resolve_qreg(&self, arg: &Arg) -> Result<Vec<usize>, ParseError> {
        let reg = self
            .qregs
            .iter()
            .find(|r| r.name == arg.reg)
            .ok_or_else(|| ParseError::UndeclaredRegister {
                line: arg.line,
                name: arg.reg.clone(),
            })?;
        match arg.index {
            Some(i) if i >= reg.size => Err(syntax(
                arg.line,
                &alloc::format!("index {i} out of range for `{}[{}]`", reg.name, reg.size),
            )),
            Some(i) => Ok(vec![reg.offset + i]),
            None => Ok((reg.offset..reg.offset + reg.size).collect()),
        }
    }

    fn arg_list(&mut self) -> Result<Vec<Arg>, ParseError> {
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::Sym(';')) {
            return Ok(args);
        }
        args.push(self.arg()?);
        while self.peek() == Some(&Tok::Sym(',')) {
            self.pos += 1;
            args.push(self.arg()?);
        }
        Ok(args)
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        let line = self.line();
        let reg = self.ident()?;
        let index = if self.peek() == Some(&Tok::Sym('[')) {
            self.pos += 1;
            let i = self.int()?;
            self.expect(']')?;
            Some(i)
        } else {
            None
        };
        Ok(Arg { reg, index, line })
    }

    fn exprs(&mut self) -> Result<Vec<Expr>, ParseError> {
        let mut p = ExprParser {
            toks: &self.toks,
            pos: self.pos,
        };
        let out = p.parse_list()?;
        self.pos = p.pos;
        Ok(out)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_ident(&self) -> Option<&str> {
        match self.peek() {
            Some(Tok::Ident(s)) => Some(s),
            _ => None,
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or(1, |t| t.line)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        let line = self.line();
        match self.next() {
            Some(Tok::Sym(s)) if s == c => Ok(()),
            other => Err(syntax(
                line,
                &alloc::format!("expected `{c}`, found {}", describe(other.as_ref())),
            )),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        let line = self.line();
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            other => Err(syntax(
                line,
                &alloc::format!("expected identifier, found {}", describe(other.as_ref())),
            )),
        }
    }

    fn int(&mut self) -> Result<usize, ParseError> {
        let line = self.line();
        match self.next() {
            Some(Tok::Int(v)) => Ok(v as usize),
            other => Err(syntax(
                line,
                &alloc::format!("expected integer, found {}", describe(other.as_ref())),
            )),
        }
    }
}

fn describe(tok: Option<&Tok>) -> String {
    match tok {
        None => "end of input".into(),
        Some(Tok::Ident(s)) => alloc::format!("`{s}`"),
        Some(Tok::Int(v)) => alloc::format!("`{v}`"),
        Some(Tok::Real(v)) => alloc::format!("`{v}`"),
        Some(Tok::Str(s)) => alloc::format!("\"{s}\""),
        Some(Tok::Sym(c)) => alloc::format!("`{c}`"),
        Some(Tok::Arrow) => "`->`".into(),
        Some(Tok::Eq) => "`==`".into(),
    }
}

fn syntax(line: usize, message: &str) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.to_string(),
    }
}
