//! Polynomial parser: sums of products of integers, variables and
//! parenthesized expressions with nonnegative integer powers.
//!
//! Juxtaposition multiplies, so `x y^2`, `x*y^2` and `3 x (y - 1)` all parse.
//! Over GF(p^k) with k ≥ 2 the identifier `t` denotes the defining root
//! unless it names a variable.

use crate::error::{Error, Result};
use crate::poly::{Exponents, Poly, PolyRing};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::Open);
                i += 1
            }
            ')' => {
                out.push(Tok::Close);
                i += 1
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Int(text.parse().map_err(|_| {
                    Error::InvalidInput(format!("integer too large: {text}"))
                })?));
            }
            _ if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            _ => return Err(Error::InvalidInput(format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero();
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.product()?;
            acc = if sign {
                self.ring.sub(&acc, &t)
            } else {
                self.ring.add(&acc, &t)
            };
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = true
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = self.ring.mul(&acc, &f);
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::Open) => {
                    let f = self.power()?;
                    acc = self.ring.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(Tok::Int(e)) => {
                    let e = *e;
                    self.pos += 1;
                    Ok(self.ring.pow(&base, e))
                }
                _ => Err(Error::InvalidInput("expected an integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        let field = self.ring.field();
        match tok {
            Some(Tok::Int(n)) => Ok(self.ring.constant(field.from_int((n % field.p()) as i64))),
            Some(Tok::Ident(name)) => {
                if let Some(i) = self.ring.names().iter().position(|v| *v == name) {
                    let n = self.ring.nvars();
                    Ok(self.ring.monomial(Exponents::unit(n, i, 1)))
                } else if name == "t" && field.k() > 1 {
                    Ok(self.ring.constant(field.from_digits(&[0, 1])))
                } else {
                    Err(Error::InvalidInput(format!("unknown variable '{name}'")))
                }
            }
            Some(Tok::Open) => {
                let inner = self.expr()?;
                if self.toks.get(self.pos) != Some(&Tok::Close) {
                    return Err(Error::InvalidInput("missing ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(Error::InvalidInput("unexpected end of polynomial".into())),
        }
    }
}

impl PolyRing {
    /// Parses a polynomial in this ring's variables.
    pub fn parse(&self, s: &str) -> Result<Poly> {
        let toks = lex(s)?;
        if toks.is_empty() {
            return Err(Error::InvalidInput("empty polynomial".into()));
        }
        let mut p = Parser {
            ring: self,
            toks,
            pos: 0,
        };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::InvalidInput(format!("trailing input in '{s}'")));
        }
        Ok(out)
    }

    /// Parses `lhs = rhs` as lhs − rhs, or a plain polynomial.
    pub fn parse_equation(&self, s: &str) -> Result<Poly> {
        match s.split_once('=') {
            Some((l, r)) => Ok(self.sub(&self.parse(l)?, &self.parse(r)?)),
            None => self.parse(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use crate::arith::ScalarField;
    use crate::poly::{MonomialOrder, PolyRing};

    fn ring(p: u64, k: u32, names: &[&str]) -> PolyRing {
        PolyRing::new(
            Arc::new(ScalarField::new(p, k).unwrap()),
            names.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::grevlex(names.len()),
        )
    }

    #[test]
    fn round_trip() {
        let r = ring(7, 1, &["u", "x", "y"]);
        for s in ["u^3 - x y^2", "2 u x + 1", "x^2 y - 3", "0"] {
            let p = r.parse(s).unwrap();
            assert_eq!(r.parse(&r.format(&p)).unwrap(), p);
        }
        assert_eq!(
            r.parse("(x+1)^2").unwrap(),
            r.parse("x^2 + 2x + 1").unwrap()
        );
        assert_eq!(r.parse("x*y*y").unwrap(), r.parse("x y^2").unwrap());
        assert_eq!(
            r.parse_equation("u^2 = x y").unwrap(),
            r.parse("u^2 - x y").unwrap()
        );
        assert_eq!(r.parse("8 x").unwrap(), r.parse("x").unwrap());
    }

    #[test]
    fn extension_root() {
        let r = ring(3, 2, &["x"]);
        let p = r.parse("t x + 2t + 1").unwrap();
        assert_eq!(r.parse(&r.format(&p)).unwrap(), p);
    }

    #[test]
    fn errors() {
        let r = ring(5, 1, &["x"]);
        assert!(r.parse("y").is_err());
        assert!(r.parse("x^").is_err());
        assert!(r.parse("(x").is_err());
        assert!(r.parse("x )").is_err());
        assert!(r.parse("").is_err());
    }
}
