// Parameter expressions: literals, `pi`, gate parameters, + - * / ^, unary
// minus and the OpenQASM 2.0 unary functions.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::lexer::{Tok, Token};
use super::ParseError;

#[derive(Debug, Clone)]
pub(super) enum Expr {
    Num(f64),
    Param(String),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Call(String, Box<Expr>),
}

impl Expr {
    pub(super) fn eval(&self, env: &[(String, f64)], line: usize) -> Result<f64, ParseError> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Param(name) => env
                .iter()
                .rev()
                .find(|(n, _)| n == name)
                .map(|(_, v)| *v)
                .ok_or_else(|| ParseError::Syntax {
                    line,
                    message: alloc::format!("unknown parameter `{name}`"),
                })?,
            Expr::Neg(e) => -e.eval(env, line)?,
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(env, line)?, b.eval(env, line)?);
                match op {
                    '+' => a + b,
                    '-' => a - b,
                    '*' => a * b,
                    '/' => a / b,
                    _ => libm::pow(a, b),
                }
            }
            Expr::Call(f, e) => {
                let x = e.eval(env, line)?;
                match f.as_str() {
                    "sin" => libm::sin(x),
                    "cos" => libm::cos(x),
                    "tan" => libm::tan(x),
                    "exp" => libm::exp(x),
                    "ln" => libm::log(x),
                    _ => libm::sqrt(x),
                }
            }
        })
    }
}

pub(super) struct ExprParser<'a> {
    pub toks: &'a [Token],
    pub pos: usize,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or(0, |t| t.line)
    }

    fn err(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            line: self.line(),
            message: message.to_string(),
        }
    }

    pub(super) fn parse_list(&mut self) -> Result<Vec<Expr>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::Sym(')')) {
            return Ok(out);
        }
        loop {
            out.push(self.parse_expr()?);
            if self.peek() == Some(&Tok::Sym(',')) {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }

    pub(super) fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_term()?;
        while let Some(Tok::Sym(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.parse_term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_unary()?;
        while let Some(Tok::Sym(op @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.parse_unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.parse_unary()?)))
            }
            Some(Tok::Sym('+')) => {
                self.pos += 1;
                self.parse_unary()
            }
            _ => self.parse_power(),
        }
    }

    fn parse_power(&mut self) -> Result<Expr, ParseError> {
        let base = self.parse_atom()?;
        if self.peek() == Some(&Tok::Sym('^')) {
            self.pos += 1;
            let exp = self.parse_unary()?;
            return Ok(Expr::Bin('^', Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| self.err("expected expression"))?;
        self.pos += 1;
        match tok {
            Tok::Int(v) => Ok(Expr::Num(v as f64)),
            Tok::Real(v) => Ok(Expr::Num(v)),
            Tok::Ident(name) if name == "pi" => Ok(Expr::Num(core::f64::consts::PI)),
            Tok::Ident(name)
                if matches!(name.as_str(), "sin" | "cos" | "tan" | "exp" | "ln" | "sqrt") =>
            {
                self.expect('(')?;
                let arg = self.parse_expr()?;
                self.expect(')')?;
                Ok(Expr::Call(name, Box::new(arg)))
            }
            Tok::Ident(name) => Ok(Expr::Param(name)),
            Tok::Sym('(') => {
                let e = self.parse_expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected expression"))
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&alloc::format!("expected `{c}`")))
        }
    }
}
