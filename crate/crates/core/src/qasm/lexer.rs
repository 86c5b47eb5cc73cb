use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(super) enum Tok {
    Ident(String),
    Int(u64),
    Real(f64),
    Str(String),
    Sym(char),
    Arrow,
    Eq,
}

#[derive(Debug, Clone)]
pub(super) struct Token {
    pub tok: Tok,
    pub line: usize,
}

pub(super) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            '\n' => {
                line += 1;
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            '/' if bytes.get(i + 1) == Some(&b'/') => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            '/' if bytes.get(i + 1) == Some(&b'*') => {
                i += 2;
                while i < bytes.len() && !(bytes[i] == b'*' && bytes.get(i + 1) == Some(&b'/')) {
                    if bytes[i] == b'\n' {
                        line += 1;
                    }
                    i += 1;
                }
                i += 2;
            }
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push(Token {
                    tok: Tok::Arrow,
                    line,
                });
                i += 2;
            }
            '=' if bytes.get(i + 1) == Some(&b'=') => {
                out.push(Token { tok: Tok::Eq, line });
                i += 2;
            }
            '"' => {
                let start = i + 1;
                i += 1;
                while i < bytes.len() && bytes[i] != b'"' {
                    if bytes[i] == b'\n' {
                        return Err(ParseError::Syntax {
                            line,
                            message: "unterminated string".to_string(),
                        });
                    }
                    i += 1;
                }
                if i >= bytes.len() {
                    return Err(ParseError::Syntax {
                        line,
                        message: "unterminated string".to_string(),
                    });
                }
                out.push(Token {
                    tok: Tok::Str(text[start..i].to_string()),
                    line,
                });
                i += 1;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(text[start..i].to_string()),
                    line,
                });
            }
            c if c.is_ascii_digit()
                || (c == '.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) =>
            {
                let start = i;
                let mut real = false;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    real = true;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        real = true;
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let s = &text[start..i];
                let tok = if real {
                    Tok::Real(s.parse().map_err(|_| ParseError::Syntax {
                        line,
                        message: alloc::format!("bad number `{s}`"),
                    })?)
                } else {
                    Tok::Int(s.parse().map_err(|_| ParseError::Syntax {
                        line,
                        message: alloc::format!("bad integer `{s}`"),
                    })?)
                };
                out.push(Token { tok, line });
            }
            ';' | ',' | '[' | ']' | '(' | ')' | '{' | '}' | '+' | '-' | '*' | '/' | '^' => {
                out.push(Token {
                    tok: Tok::Sym(c),
                    line,
                });
                i += 1;
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    message: alloc::format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_and_comments() {
        let toks = tokenize("rz(1.5e-3) q[0]; // hi\n -> 2.0").unwrap();
        let kinds: Vec<Tok> = toks.into_iter().map(|t| t.tok).collect();
        assert_eq!(kinds[0], Tok::Ident("rz".into()));
        assert_eq!(kinds[2], Tok::Real(1.5e-3));
        assert_eq!(kinds[6], Tok::Int(0));
        assert_eq!(kinds[9], Tok::Arrow);
        assert_eq!(kinds[10], Tok::Real(2.0));
    }
}
