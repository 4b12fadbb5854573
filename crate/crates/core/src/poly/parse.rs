//! Recursive-descent parser for the polynomial text format.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' INTEGER)?
//! atom  := INTEGER | IDENT | '(' expr ')'
//! ```
//!
//! Multiplication must be written explicitly. Division is only allowed by a
//! nonzero constant, which is how rational coefficients are printed.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Polynomial, PolyRing};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax {
                pos: i,
                msg: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let at = self.offset();
                self.pos += 1;
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::Syntax {
                        pos: at,
                        msg: "division is only allowed by a nonzero constant".into(),
                    });
                }
                let inv = self.ring.field().inv(&d.constant_term()).ok_or(Error::Syntax {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.offset();
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Int(n))) => {
                self.pos += 1;
                let e: u32 = n.try_into().map_err(|_| Error::Syntax {
                    pos: at,
                    msg: "exponent too large".into(),
                })?;
                Ok(base.pow(e))
            }
            Some((_, Tok::Sym('-'))) => Err(Error::NegativeExponent { pos: at }),
            _ => Err(Error::Syntax {
                pos: at,
                msg: "expected a nonnegative integer exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let at = self.offset();
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Int(n))) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&n)))
            }
            Some((_, Tok::Ident(name))) => {
                self.pos += 1;
                let i = self
                    .ring
                    .var_index(&name)
                    .ok_or(Error::UnknownVariable { name, pos: at })?;
                Ok(Polynomial::var(self.ring, i))
            }
            Some((_, Tok::Sym('('))) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Syntax {
                        pos: self.offset(),
                        msg: "expected `)`".into(),
                    });
                }
                Ok(e)
            }
            Some((_, t)) => Err(Error::Syntax {
                pos: at,
                msg: format!("unexpected token {t:?}"),
            }),
            None => Err(Error::Syntax {
                pos: at,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses polynomial text into a canonical [`Polynomial`] of `ring`.
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ring,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Syntax {
            pos: p.offset(),
            msg: "expected an operator (multiplication must be written with `*`)".into(),
        });
    }
    Ok(e)
}
