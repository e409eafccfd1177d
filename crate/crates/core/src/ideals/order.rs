use std::cmp::Ordering;
use std::fmt;

use crate::poly::{Monomial, Poly, RingRef};
use crate::field::FieldValue;

/// Fixed precedence used when a ring does not specify one, highest first.
/// Variables not listed here rank below these, in declared order.
pub const DEFAULT_PRECEDENCE: [&str; 6] = ["s", "x", "y", "z", "t", "u"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    GradedLex,
    Lex,
}

/// A monomial order on a ring's variables. `precedence[0]` is the most
/// significant variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
    names: Vec<String>,
}

impl MonomialOrder {
    pub fn new(ring: &RingRef, kind: OrderKind, precedence: &[&str]) -> Option<MonomialOrder> {
        let mut idx = Vec::with_capacity(ring.nvars());
        for name in precedence {
            let i = ring.index_of(name)?;
            if idx.contains(&i) {
                return None;
            }
            idx.push(i);
        }
        if idx.len() != ring.nvars() {
            return None;
        }
        Some(MonomialOrder { kind, precedence: idx, names: ring.vars().to_vec() })
    }

    /// Graded lex with the default precedence.
    pub fn default_for(ring: &RingRef) -> MonomialOrder {
        MonomialOrder::with_default_precedence(ring, OrderKind::GradedLex)
    }

    pub fn with_default_precedence(ring: &RingRef, kind: OrderKind) -> MonomialOrder {
        let mut idx: Vec<usize> = (0..ring.nvars()).collect();
        let rank = |i: usize| {
            DEFAULT_PRECEDENCE
                .iter()
                .position(|v| *v == ring.vars()[i])
                .unwrap_or(DEFAULT_PRECEDENCE.len() + i)
        };
        idx.sort_by_key(|&i| rank(i));
        MonomialOrder { kind, precedence: idx, names: ring.vars().to_vec() }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence_names(&self) -> Vec<&str> {
        self.precedence.iter().map(|&i| self.names[i].as_str()).collect()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.kind == OrderKind::GradedLex {
            match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        for &i in &self.precedence {
            match a.exps()[i].cmp(&b.exps()[i]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Leading monomial and coefficient of `p`.
    pub fn lead<'a>(&self, p: &'a Poly) -> Option<(&'a Monomial, &'a FieldValue)> {
        p.terms().max_by(|a, b| self.cmp(a.0, b.0))
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            OrderKind::GradedLex => "grlex",
            OrderKind::Lex => "lex",
        };
        let mut names = self.precedence_names();
        names.reverse();
        write!(f, "{kind}({})", names.join(" < "))
    }
}
