//! Recursive-descent parser for polynomial expressions.
//!
//! Accepts sums and differences, integer literals, `a/b` with a constant
//! divisor, `v^k`, parentheses and implicit multiplication. Whitespace is
//! ignored. Names that are parameters of the coefficient field parse as
//! constants.

use num_bigint::BigInt;

use super::{AlgebraError, Poly, RingRef};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, AlgebraError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Num(src[start..i].parse().unwrap()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(AlgebraError::SyntaxError {
                    position: start,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((tok, start));
        i += c.len_utf8();
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a RingRef,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn syntax(&self, message: impl Into<String>) -> AlgebraError {
        AlgebraError::SyntaxError { position: self.here(), message: message.into() }
    }

    fn expr(&mut self) -> Result<Poly, AlgebraError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.unary()?;
                    let c = d.constant_value().ok_or_else(|| AlgebraError::CoefficientError {
                        position: at,
                        message: "divisor is not a constant".into(),
                    })?;
                    acc = acc.div_const(&c).ok_or_else(|| AlgebraError::CoefficientError {
                        position: at,
                        message: format!("division by zero in {}", self.ring.field()),
                    })?;
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, AlgebraError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let at = self.here();
            match self.toks.get(self.pos) {
                Some((Tok::Num(n), _)) => {
                    let e: u32 = n.try_into().map_err(|_| AlgebraError::SyntaxError {
                        position: at,
                        message: "exponent too large".into(),
                    })?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.syntax("expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, AlgebraError> {
        let at = self.here();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Num(n), _)) => {
                self.pos += 1;
                Ok(Poly::constant(self.ring, self.ring.field().from_bigint(&n)))
            }
            Some((Tok::Ident(name), _)) => {
                self.pos += 1;
                if let Some(i) = self.ring.index_of(&name) {
                    Ok(Poly::var_at(self.ring, i))
                } else if let Some(c) = self.ring.field().parameter_value(&name) {
                    Ok(Poly::constant(self.ring, c))
                } else {
                    Err(AlgebraError::UnknownVariable { name, position: at })
                }
            }
            Some((Tok::LParen, _)) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.syntax("expected a number, variable or '('")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

pub(super) fn parse(ring: &RingRef, src: &str) -> Result<Poly, AlgebraError> {
    let toks = lex(src)?;
    let mut p = Parser { ring, toks, pos: 0, end: src.len() };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::Ring;
    use super::*;
    use crate::field::Field;

    #[test]
    fn error_kinds() {
        let r = Ring::new(Field::Rationals, &["x", "y"]).unwrap();
        assert!(matches!(
            Poly::parse(&r, "x + w"),
            Err(AlgebraError::UnknownVariable { position: 4, .. })
        ));
        assert!(matches!(Poly::parse(&r, "x +"), Err(AlgebraError::SyntaxError { position: 3, .. })));
        assert!(matches!(Poly::parse(&r, "(x"), Err(AlgebraError::SyntaxError { .. })));
        assert!(matches!(Poly::parse(&r, "x / y"), Err(AlgebraError::CoefficientError { .. })));
        assert!(matches!(Poly::parse(&r, "x^y"), Err(AlgebraError::SyntaxError { .. })));
        let f5 = Ring::new(Field::prime(5).unwrap(), &["x"]).unwrap();
        assert!(matches!(Poly::parse(&f5, "x/5"), Err(AlgebraError::CoefficientError { .. })));
        assert_eq!(Poly::parse(&f5, "x/2").unwrap().to_string(), "3*x");
    }

    #[test]
    fn implicit_products_and_fractions() {
        let r = Ring::new(Field::Rationals, &["x", "y"]).unwrap();
        let a = Poly::parse(&r, "2x y - 3/2 (x+1)^2").unwrap();
        let b = Poly::parse(&r, "2*x*y - 3/2*x^2 - 3*x - 3/2").unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_string(), "-3/2*x^2 + 2*x*y - 3*x - 3/2");
    }
}
