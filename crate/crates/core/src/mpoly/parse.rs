//! Recursive-descent parser for the polynomial input grammar:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := uint | var | '(' expr ')'
//! var    := 'X' uint        (also accepted lowercase 'x')
//! ```
//!
//! Standard precedence, left associativity, no implicit multiplication.
//! Whitespace is ignored. Every error carries the byte offset it occurred at.

use super::{MultiPoly, PolyError};
use num_bigint::BigInt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable X{index} at byte {pos}: only X0..X{max} exist")]
    UnknownVariable { pos: usize, index: usize, max: usize },
    #[error("non-integer exponent at byte {pos}")]
    BadExponent { pos: usize },
    #[error("exponent at byte {pos} exceeds the supported maximum {max}")]
    ExponentTooLarge { pos: usize, max: u16 },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        while let Some(t) = lx.next_token()? {
            out.push(t);
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(Tok, usize)>, ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => Tok::Int(self.read_uint()),
            b'X' | b'x' => {
                self.pos += 1;
                if self.pos >= self.src.len() || !self.src[self.pos].is_ascii_digit() {
                    return Err(ParseError::Syntax {
                        pos: start,
                        msg: "variable name must be X followed by an index".into(),
                    });
                }
                let idx = self.read_uint();
                let idx = usize::try_from(idx).map_err(|_| ParseError::Syntax {
                    pos: start,
                    msg: "variable index too large".into(),
                })?;
                Tok::Var(idx)
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character {:?}", other as char),
                })
            }
        };
        Ok(Some((tok, start)))
    }

    fn read_uint(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .unwrap()
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    nvars: usize,
    end: usize,
}

/// Parses `text` into a polynomial in `nvars` variables X0..X{nvars-1}.
pub fn parse(text: &str, nvars: usize) -> Result<MultiPoly, ParseError> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        nvars,
        end: text.len(),
    };
    let poly = p.expr()?;
    if let Some((_, pos)) = p.peek() {
        return Err(ParseError::Syntax {
            pos,
            msg: "trailing input after expression".into(),
        });
    }
    Ok(poly)
}

impl Parser {
    fn peek(&self) -> Option<(Tok, usize)> {
        self.toks.get(self.idx).cloned()
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.idx).cloned();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.idx)
            .map(|&(_, p)| p)
            .unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut negate = false;
        if let Some((Tok::Minus, _)) = self.peek() {
            self.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some((tok, _)) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.ring(acc.add(&rhs))?;
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.ring(acc.sub(&rhs))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while let Some((Tok::Star, _)) = self.peek() {
            self.bump();
            let rhs = self.factor()?;
            acc = self.ring(acc.mul(&rhs))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.base()?;
        if let Some((Tok::Caret, _)) = self.peek() {
            self.bump();
            let pos = self.here();
            match self.bump() {
                Some((Tok::Int(e), _)) => {
                    let e: u16 = e
                        .try_into()
                        .map_err(|_| ParseError::ExponentTooLarge { pos, max: u16::MAX })?;
                    Ok(base.pow(e as u32))
                }
                _ => Err(ParseError::BadExponent { pos }),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<MultiPoly, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some((Tok::Int(n), _)) => Ok(MultiPoly::constant(self.nvars, n)),
            Some((Tok::Var(index), pos)) => {
                MultiPoly::var(self.nvars, index).map_err(|e| match e {
                    PolyError::VarOutOfRange(index, n) => ParseError::UnknownVariable {
                        pos,
                        index,
                        max: n.saturating_sub(1),
                    },
                    _ => unreachable!(),
                })
            }
            Some((Tok::LParen, open_pos)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    _ => Err(ParseError::Syntax {
                        pos: open_pos,
                        msg: "unclosed parenthesis".into(),
                    }),
                }
            }
            _ => Err(ParseError::Syntax {
                pos,
                msg: "expected integer, variable or parenthesised expression".into(),
            }),
        }
    }

    fn ring(&self, r: Result<MultiPoly, PolyError>) -> Result<MultiPoly, ParseError> {
        r.map_err(|e| ParseError::Syntax {
            pos: 0,
            msg: e.to_string(),
        })
    }
}
