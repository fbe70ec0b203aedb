//! Tokenizer for `.grdt` sources.
//!
//! Layout-insensitive: newlines at bracket depth zero become separator
//! tokens, everything inside parentheses or braces flows freely. `--`
//! starts a line comment.

use thiserror::Error;

use crate::ast::Loc;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    LIdent(String),
    UIdent(String),
    Int(i64),
    Bool(bool),
    KwData,
    KwCase,
    KwOf,
    KwForall,
    KwPrimitive,
    Eq,       // =
    DColon,   // ::
    Arrow,    // ->
    FatArrow, // =>
    Lambda,   // \
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Bar,
    Dot,
    Underscore,
    Plus,
    AndAnd,
    Gt,
    Newline,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub loc: Loc,
}

#[derive(Debug, Clone, Error, PartialEq)]
#[error("parse error at {loc}: {msg}")]
pub struct ParseError {
    pub loc: Loc,
    pub msg: String,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut depth: i32 = 0;
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    let loc = |line, col| Loc { line, col };

    while i < chars.len() {
        let c = chars[i];
        let here = loc(line, col);
        match c {
            '\n' => {
                if depth == 0 && !matches!(out.last().map(|t: &Token| &t.tok), Some(Tok::Newline) | None)
                {
                    out.push(Token {
                        tok: Tok::Newline,
                        loc: here,
                    });
                }
                i += 1;
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                i += 1;
                col += 1;
            }
            '-' if i + 1 < chars.len() && chars[i + 1] == '-' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '-' if i + 1 < chars.len() && chars[i + 1] == '>' => {
                out.push(Token {
                    tok: Tok::Arrow,
                    loc: here,
                });
                i += 2;
                col += 2;
            }
            '=' => {
                if i + 1 < chars.len() && chars[i + 1] == '>' {
                    out.push(Token {
                        tok: Tok::FatArrow,
                        loc: here,
                    });
                    i += 2;
                    col += 2;
                } else {
                    out.push(Token {
                        tok: Tok::Eq,
                        loc: here,
                    });
                    i += 1;
                    col += 1;
                }
            }
            ':' => {
                if i + 1 < chars.len() && chars[i + 1] == ':' {
                    out.push(Token {
                        tok: Tok::DColon,
                        loc: here,
                    });
                    i += 2;
                    col += 2;
                } else {
                    return Err(ParseError {
                        loc: here,
                        msg: "expected '::'".to_string(),
                    });
                }
            }
            '&' => {
                if i + 1 < chars.len() && chars[i + 1] == '&' {
                    out.push(Token {
                        tok: Tok::AndAnd,
                        loc: here,
                    });
                    i += 2;
                    col += 2;
                } else {
                    return Err(ParseError {
                        loc: here,
                        msg: "expected '&&'".to_string(),
                    });
                }
            }
            '\\' => {
                out.push(Token {
                    tok: Tok::Lambda,
                    loc: here,
                });
                i += 1;
                col += 1;
            }
            '(' => {
                depth += 1;
                out.push(Token {
                    tok: Tok::LParen,
                    loc: here,
                });
                i += 1;
                col += 1;
            }
            ')' => {
                depth -= 1;
                out.push(Token {
                    tok: Tok::RParen,
                    loc: here,
                });
                i += 1;
                col += 1;
            }
            '{' => {
                depth += 1;
                out.push(Token {
                    tok: Tok::LBrace,
                    loc: here,
                });
                i += 1;
                col += 1;
            }
            '}' => {
                depth -= 1;
                out.push(Token {
                    tok: Tok::RBrace,
                    loc: here,
                });
                i += 1;
                col += 1;
            }
            ',' => {
                out.push(Token {
                    tok: Tok::Comma,
                    loc: here,
                });
                i += 1;
                col += 1;
            }
            ';' => {
                out.push(Token {
                    tok: Tok::Semi,
                    loc: here,
                });
                i += 1;
                col += 1;
            }
            '|' => {
                out.push(Token {
                    tok: Tok::Bar,
                    loc: here,
                });
                i += 1;
                col += 1;
            }
            '.' => {
                out.push(Token {
                    tok: Tok::Dot,
                    loc: here,
                });
                i += 1;
                col += 1;
            }
            '+' => {
                out.push(Token {
                    tok: Tok::Plus,
                    loc: here,
                });
                i += 1;
                col += 1;
            }
            '>' => {
                out.push(Token {
                    tok: Tok::Gt,
                    loc: here,
                });
                i += 1;
                col += 1;
            }
            '_' if !next_is_ident_char(&chars, i + 1) => {
                out.push(Token {
                    tok: Tok::Underscore,
                    loc: here,
                });
                i += 1;
                col += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                    col += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n: i64 = text.parse().map_err(|_| ParseError {
                    loc: here,
                    msg: format!("integer literal out of range: {text}"),
                })?;
                out.push(Token {
                    tok: Tok::Int(n),
                    loc: here,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                    col += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let tok = match text.as_str() {
                    "data" => Tok::KwData,
                    "case" => Tok::KwCase,
                    "of" => Tok::KwOf,
                    "forall" => Tok::KwForall,
                    "primitive" => Tok::KwPrimitive,
                    "True" => Tok::Bool(true),
                    "False" => Tok::Bool(false),
                    _ if text.chars().next().unwrap().is_ascii_uppercase() => Tok::UIdent(text),
                    _ => Tok::LIdent(text),
                };
                out.push(Token { tok, loc: here });
            }
            other => {
                return Err(ParseError {
                    loc: here,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    Ok(out)
}

fn next_is_ident_char(chars: &[char], i: usize) -> bool {
    chars
        .get(i)
        .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizes_declaration() {
        let toks = tokenize("data Erk a = (a=Int) => I a").unwrap();
        assert_eq!(toks[0].tok, Tok::KwData);
        assert_eq!(toks[1].tok, Tok::UIdent("Erk".into()));
        assert!(toks.iter().any(|t| t.tok == Tok::FatArrow));
    }

    #[test]
    fn newlines_only_at_depth_zero() {
        let toks = tokenize("f = (1,\n2)\ng = 3").unwrap();
        let newlines = toks.iter().filter(|t| t.tok == Tok::Newline).count();
        assert_eq!(newlines, 1);
    }

    #[test]
    fn comments_are_skipped() {
        let toks = tokenize("f = 1 -- the unit\n").unwrap();
        assert!(toks.iter().all(|t| !matches!(t.tok, Tok::LIdent(ref s) if s == "the")));
    }

    #[test]
    fn reports_position() {
        let err = tokenize("f = ?").unwrap_err();
        assert_eq!(err.loc.line, 1);
        assert_eq!(err.loc.col, 5);
    }
}
