//! Recursive-descent parser for the formula grammar:
//!
//! ```text
//! expr := imp
//! imp  := or ("->" imp)?          right-associative, lowest precedence
//! or   := and ("|" and)*
//! and  := not ("&" not)*
//! not  := "!" not | atom
//! atom := ident | "true" | "false" | "(" expr ")"
//! ```

use thiserror::Error;

use super::ast::{Formula, FormulaNode, VariableId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at line {line}, column {column} (offset {offset}): {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    True,
    False,
    Arrow,
    Or,
    And,
    Not,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn error_at(&self, offset: usize, message: String) -> ParseError {
        let mut line = 1;
        let mut column = 1;
        for b in self.src.bytes().take(offset) {
            if b == b'\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        ParseError {
            line,
            column,
            offset,
            message,
        }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            let start = self.pos;
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.pos += 1;
                }
                b'(' => {
                    out.push((Tok::LParen, start));
                    self.pos += 1;
                }
                b')' => {
                    out.push((Tok::RParen, start));
                    self.pos += 1;
                }
                b'!' => {
                    out.push((Tok::Not, start));
                    self.pos += 1;
                }
                b'&' => {
                    out.push((Tok::And, start));
                    self.pos += 1;
                }
                b'|' => {
                    out.push((Tok::Or, start));
                    self.pos += 1;
                }
                b'-' => {
                    if self.bytes.get(self.pos + 1) == Some(&b'>') {
                        out.push((Tok::Arrow, start));
                        self.pos += 2;
                    } else {
                        return Err(self.error_at(start, "expected '->'".into()));
                    }
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let mut end = self.pos + 1;
                    while end < self.bytes.len() {
                        let c = self.bytes[end];
                        if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                            end += 1;
                        } else {
                            break;
                        }
                    }
                    let word = &self.src[self.pos..end];
                    let tok = match word {
                        "true" => Tok::True,
                        "false" => Tok::False,
                        _ => Tok::Ident(word.to_string()),
                    };
                    out.push((tok, start));
                    self.pos = end;
                }
                other => {
                    return Err(
                        self.error_at(start, format!("unexpected character {:?}", other as char))
                    );
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error_here(&self, message: String) -> ParseError {
        let offset = self
            .toks
            .get(self.pos)
            .map(|(_, o)| *o)
            .unwrap_or(self.src.len());
        Lexer::new(self.src).error_at(offset, message)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn imp(&mut self) -> Result<FormulaNode, ParseError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.bump();
            let rhs = self.imp()?;
            Ok(FormulaNode::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<FormulaNode, ParseError> {
        let mut children = vec![self.and()?];
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            children.push(self.and()?);
        }
        Ok(if children.len() == 1 {
            children.pop().unwrap()
        } else {
            FormulaNode::Or(children)
        })
    }

    fn and(&mut self) -> Result<FormulaNode, ParseError> {
        let mut children = vec![self.not()?];
        while self.peek() == Some(&Tok::And) {
            self.bump();
            children.push(self.not()?);
        }
        Ok(if children.len() == 1 {
            children.pop().unwrap()
        } else {
            FormulaNode::And(children)
        })
    }

    fn not(&mut self) -> Result<FormulaNode, ParseError> {
        if self.peek() == Some(&Tok::Not) {
            self.bump();
            Ok(FormulaNode::not(self.not()?))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<FormulaNode, ParseError> {
        match self.bump() {
            Some(Tok::Ident(name)) => {
                let v = VariableId::new(&name).map_err(|e| {
                    self.pos -= 1;
                    self.error_here(e.to_string())
                })?;
                Ok(FormulaNode::Var(v))
            }
            Some(Tok::True) => Ok(FormulaNode::Const(true)),
            Some(Tok::False) => Ok(FormulaNode::Const(false)),
            Some(Tok::LParen) => {
                let inner = self.imp()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        Err(self.error_here("expected ')'".into()))
                    }
                }
            }
            Some(_) => {
                self.pos -= 1;
                Err(self.error_here("expected a variable, constant, '!' or '('".into()))
            }
            None => Err(self.error_here("unexpected end of input".into())),
        }
    }
}

/// Parse a single sentence.
pub fn parse_sentence(text: &str) -> Result<FormulaNode, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser {
        src: text,
        toks,
        pos: 0,
    };
    let node = p.imp()?;
    if p.pos != p.toks.len() {
        return Err(p.error_here("trailing input after expression".into()));
    }
    Ok(node)
}

/// Parse a formula given one expression per entry.
pub fn parse_formula(sentences: &[&str]) -> Result<Formula, ParseError> {
    let nodes = sentences
        .iter()
        .map(|s| parse_sentence(s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Formula::new(nodes))
}
