//! Sparse multivariate polynomials over a [`Field`].
//!
//! Terms are stored in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic with the ring's first variable largest. The printer
//! walks the map backwards, so output is in descending graded-lex order.

mod calculus;
mod parse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{write_sum, Field, FieldError, FieldValue, Rendered};

pub use calculus::{jacobian_det, DegreeData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown variable {name:?} at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("syntax error at position {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("coefficient error at position {position}: {message}")]
    CoefficientError { position: usize, message: String },
    #[error("operands live in different rings: {0}")]
    RingMismatch(String),
    #[error("no image supplied for variable {0:?}")]
    MissingImage(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Degree of a polynomial; the zero polynomial has degree `MinusInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::MinusInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial ring: coefficient field plus an ordered variable list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Field,
    vars: Vec<String>,
}

pub type RingRef = Arc<Ring>;

fn valid_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new(field: Field, vars: &[&str]) -> Result<RingRef, AlgebraError> {
        let params = field.parameters();
        for (i, v) in vars.iter().enumerate() {
            if !valid_name(v) {
                return Err(AlgebraError::InvalidRing(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(AlgebraError::InvalidRing(format!("duplicate variable {v:?}")));
            }
            if params.contains(v) {
                return Err(AlgebraError::InvalidRing(format!("{v:?} is also a field parameter")));
            }
        }
        Ok(Arc::new(Ring { field, vars: vars.iter().map(|s| s.to_string()).collect() }))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}

/// Exponent vector. Ordered by total degree, then lexicographically with
/// the first variable most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial { deg: exps.iter().sum(), exps: exps.into_boxed_slice() }
    }

    pub fn one(n: usize) -> Monomial {
        Monomial::new(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: u32) -> Monomial {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial::new(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(o.exps.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        self.divides(o)
            .then(|| Monomial::new(o.exps.iter().zip(self.exps.iter()).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(o.exps.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(o.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn format(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (v, &e) in vars.iter().zip(self.exps.iter()) {
            match e {
                0 => {}
                1 => parts.push(v.clone()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        parts.join("*")
    }
}

#[derive(Debug, Clone)]
pub struct Poly {
    ring: RingRef,
    terms: BTreeMap<Monomial, FieldValue>,
}

impl PartialEq for Poly {
    fn eq(&self, o: &Poly) -> bool {
        (Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring) && self.terms == o.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Poly {
    pub fn zero(ring: &RingRef) -> Poly {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &RingRef) -> Poly {
        Poly::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &RingRef, c: FieldValue) -> Poly {
        Poly::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &RingRef, n: i64) -> Poly {
        Poly::constant(ring, ring.field.from_i64(n))
    }

    pub fn term(ring: &RingRef, m: Monomial, c: FieldValue) -> Poly {
        assert_eq!(m.exps.len(), ring.nvars(), "monomial arity does not match ring");
        let c = ring.field.lift(&c);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &RingRef, name: &str) -> Result<Poly, AlgebraError> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable { name: name.to_string(), position: 0 })?;
        Ok(Poly::var_at(ring, i))
    }

    pub fn var_at(ring: &RingRef, i: usize) -> Poly {
        Poly::term(ring, Monomial::var(ring.nvars(), i, 1), ring.field.one())
    }

    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, FieldValue)>) -> Poly {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn parse(ring: &RingRef, src: &str) -> Result<Poly, AlgebraError> {
        parse::parse(ring, src)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        &self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<FieldValue> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(|| self.ring.field.zero()))
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> FieldValue {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldValue)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldValue {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field.zero())
    }

    /// Leading term under the storage (graded-lex) order.
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldValue)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &FieldValue) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn same_ring(&self, o: &Poly) {
        assert!(
            Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring,
            "ring mismatch: {} vs {}",
            self.ring,
            o.ring
        );
    }

    pub fn check_ring(&self, o: &Poly) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch(format!("{} vs {}", self.ring, o.ring)))
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.same_ring(o);
        let (mut big, small) = if self.len() >= o.len() { (self.clone(), o) } else { (o.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.same_ring(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &FieldValue) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect() }
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &FieldValue) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, x)| (n.mul(m), x.mul(c))).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        self.same_ring(o);
        let mut out = Poly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divide by a nonzero constant.
    pub fn div_const(&self, c: &FieldValue) -> Option<Poly> {
        c.inv().map(|i| self.scale(&i))
    }

    /// Scale so that the leading coefficient (graded-lex) is one.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    pub fn total_degree(&self) -> Degree {
        self.terms.keys().next_back().map_or(Degree::MinusInfinity, |m| Degree::Finite(m.deg))
    }

    pub fn degree_in(&self, i: usize) -> Degree {
        self.terms.keys().map(|m| m.exps[i]).max().map_or(Degree::MinusInfinity, Degree::Finite)
    }

    pub fn degree_in_var(&self, name: &str) -> Option<Degree> {
        self.ring.index_of(name).map(|i| self.degree_in(i))
    }

    /// Lowest power of variable `i` that occurs.
    pub fn valuation_in(&self, i: usize) -> Degree {
        self.terms.keys().map(|m| m.exps[i]).min().map_or(Degree::MinusInfinity, Degree::Finite)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exps[i] > 0)
    }

    /// Indices of the variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.involves(i)).collect()
    }

    pub fn homogeneous_component(&self, d: u32) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.deg == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Highest-degree homogeneous component.
    pub fn leading_form(&self) -> Poly {
        match self.total_degree() {
            Degree::Finite(d) => self.homogeneous_component(d),
            Degree::MinusInfinity => self.clone(),
        }
    }

    /// Coefficients of `self` as a polynomial in variable `i`; entry `k`
    /// multiplies `v_i^k` and no longer involves `v_i`.
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let n = match self.degree_in(i) {
            Degree::MinusInfinity => return Vec::new(),
            Degree::Finite(d) => d as usize + 1,
        };
        let mut out = vec![Poly::zero(&self.ring); n];
        for (m, c) in &self.terms {
            let k = m.exps[i] as usize;
            let mut e = m.exps.to_vec();
            e[i] = 0;
            out[k].add_term(Monomial::new(e), c);
        }
        out
    }

    /// Dense coefficient list when `self` involves only variable `i`.
    pub fn to_dense(&self, i: usize) -> Option<Vec<FieldValue>> {
        let n = match self.degree_in(i) {
            Degree::MinusInfinity => return Some(Vec::new()),
            Degree::Finite(d) => d as usize + 1,
        };
        let mut out = vec![self.ring.field.zero(); n];
        for (m, c) in &self.terms {
            if m.deg != m.exps[i] {
                return None;
            }
            out[m.exps[i] as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_dense(ring: &RingRef, i: usize, coeffs: &[FieldValue]) -> Poly {
        let n = ring.nvars();
        Poly::from_terms(ring, coeffs.iter().enumerate().map(|(k, c)| (Monomial::var(n, i, k as u32), c.clone())))
    }

    /// Substitute a constant for variable `i`.
    pub fn eval_var(&self, i: usize, value: &FieldValue) -> Poly {
        let mut pw = vec![self.ring.field.one()];
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps[i] as usize;
            while pw.len() <= e {
                let next = pw.last().unwrap().mul(value);
                pw.push(next);
            }
            let mut ex = m.exps.to_vec();
            ex[i] = 0;
            out.add_term(Monomial::new(ex), &c.mul(&pw[e]));
        }
        out
    }

    /// Evaluate at a point given by one value per variable.
    pub fn evaluate(&self, point: &[FieldValue]) -> FieldValue {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = self.ring.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps.iter()) {
                if e > 0 {
                    t = t.mul(&x.pow(e as u64));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Ring homomorphism sending variable `i` of `self`'s ring to
    /// `images[i]`. All images must share one ring. Powers are cached.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly, AlgebraError> {
        if images.len() != self.ring.nvars() {
            return Err(AlgebraError::MissingImage(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let Some(target) = images.first().map(|p| p.ring.clone()) else {
            // A ring without variables: only constants.
            return Err(AlgebraError::MissingImage("empty image list".into()));
        };
        for im in images {
            im.check_ring(&images[0])?;
        }
        if self.ring.field != target.field {
            return Err(AlgebraError::RingMismatch(format!(
                "coefficient fields {} and {} differ",
                self.ring.field, target.field
            )));
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|_| vec![Poly::one(&target)]).collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&images[i]);
                    cache.push(next);
                }
                t = t.mul(&cache[e as usize]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Substitution by variable name. Every variable occurring in `self`
    /// needs an image; variables that do not occur may be omitted.
    pub fn substitute(&self, images: &HashMap<String, Poly>) -> Result<Poly, AlgebraError> {
        let target = images
            .values()
            .next()
            .map(|p| p.ring.clone())
            .ok_or_else(|| AlgebraError::MissingImage("no images supplied".into()))?;
        let mut list = Vec::with_capacity(self.ring.nvars());
        for (i, v) in self.ring.vars.iter().enumerate() {
            match images.get(v) {
                Some(p) => list.push(p.clone()),
                None if !self.involves(i) => list.push(Poly::zero(&target)),
                None => return Err(AlgebraError::MissingImage(v.clone())),
            }
        }
        self.compose(&list)
    }

    /// Move `self` into `target`, matching variables by name. Coefficients
    /// are lifted when the target field is an extension of ours.
    pub fn to_ring(&self, target: &RingRef) -> Result<Poly, AlgebraError> {
        let mut map = Vec::with_capacity(self.ring.nvars());
        for (i, v) in self.ring.vars.iter().enumerate() {
            match target.index_of(v) {
                Some(j) => map.push(Some(j)),
                None if !self.involves(i) => map.push(None),
                None => {
                    return Err(AlgebraError::UnknownVariable { name: v.clone(), position: 0 });
                }
            }
        }
        let compatible = target.field == self.ring.field
            || target.field.prime_subfield() == self.ring.field.prime_subfield()
                && target.field.depth() > self.ring.field.depth();
        if !compatible {
            return Err(AlgebraError::RingMismatch(format!("{} into {}", self.ring, target)));
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, j) in map.iter().enumerate() {
                if let Some(j) = j {
                    e[*j] = m.exps[i];
                }
            }
            out.add_term(Monomial::new(e), &target.field.lift(c));
        }
        Ok(out)
    }

    /// Treat variable `name` as a coefficient: the result lives in `target`,
    /// whose field must carry `name` as a parameter.
    pub fn absorb_variable(&self, name: &str, target: &RingRef) -> Result<Poly, AlgebraError> {
        let i = self
            .ring
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable { name: name.into(), position: 0 })?;
        let param = target
            .field
            .parameter_value(name)
            .ok_or_else(|| AlgebraError::InvalidRing(format!("{} has no parameter {name}", target.field)))?;
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (k, v) in self.ring.vars.iter().enumerate() {
                if k == i || m.exps[k] == 0 {
                    continue;
                }
                let j = target
                    .index_of(v)
                    .ok_or_else(|| AlgebraError::UnknownVariable { name: v.clone(), position: 0 })?;
                e[j] = m.exps[k];
            }
            let coeff = target.field.lift(c).mul(&param.pow(m.exps[i] as u64));
            out.add_term(Monomial::new(e), &coeff);
        }
        Ok(out)
    }

    /// Reduce integer-coefficient data into another field (for example
    /// from the rationals to a prime field).
    pub fn map_field(&self, target: &RingRef) -> Result<Poly, AlgebraError> {
        if target.vars != self.ring.vars {
            return Err(AlgebraError::RingMismatch(format!("{} into {}", self.ring, target)));
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let v = match c {
                FieldValue::Rational(q) => target.field.from_rational(q)?,
                other if target.field.contains(other) => other.clone(),
                other => {
                    return Err(AlgebraError::RingMismatch(format!("cannot map {other:?} into {}", target.field)))
                }
            };
            out.add_term(m.clone(), &v);
        }
        Ok(out)
    }

    /// Exact quotient `self / d` if `d` divides `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        self.same_ring(d);
        let (lm, lc) = d.leading_term()?;
        let lc_inv = lc.inv().unwrap();
        let mut r = self.clone();
        let mut q = Poly::zero(&self.ring);
        while let Some((m, c)) = r.leading_term() {
            let qm = lm.quotient_of(m)?;
            let qc = c.mul(&lc_inv);
            r = r.sub(&d.mul_term(&qm, &qc));
            q.add_term(qm, &qc);
        }
        Some(q)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = &self.ring.field;
        let terms = self.terms.iter().rev().map(|(m, c)| {
            let r: Rendered = field.render(c);
            (r, m.format(&self.ring.vars))
        });
        f.write_str(&write_sum(terms))
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        Poly::add(self, o)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        Poly::sub(self, o)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        Poly::mul(self, o)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qring(vars: &[&str]) -> RingRef {
        Ring::new(Field::Rationals, vars).unwrap()
    }

    #[test]
    fn printer_orders_descending_graded_lex() {
        let r = qring(&["t", "x", "y"]);
        let p = Poly::parse(&r, "-x - x^2 + y*t^2").unwrap();
        assert_eq!(p.to_string(), "t^2*y - x^2 - x");
        assert_eq!(Poly::parse(&r, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn zero_polynomial() {
        let r = qring(&["x"]);
        let z = Poly::zero(&r);
        assert_eq!(z.to_string(), "0");
        assert_eq!(z.total_degree(), Degree::MinusInfinity);
        let x = Poly::var(&r, "x").unwrap();
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn compose_is_homomorphism() {
        let r = qring(&["x", "y"]);
        let p = Poly::parse(&r, "x^2*y - 3*x + 1/2").unwrap();
        let img = [Poly::parse(&r, "x + y").unwrap(), Poly::parse(&r, "x*y").unwrap()];
        let direct = p.compose(&img).unwrap();
        let expect = Poly::parse(&r, "(x+y)^2*x*y - 3*(x+y) + 1/2").unwrap();
        assert_eq!(direct, expect);
    }

    #[test]
    fn exact_division() {
        let r = qring(&["x", "y"]);
        let a = Poly::parse(&r, "x^2 - y^2").unwrap();
        let b = Poly::parse(&r, "x - y").unwrap();
        assert_eq!(a.exact_div(&b).unwrap(), Poly::parse(&r, "x + y").unwrap());
        assert!(a.exact_div(&Poly::parse(&r, "x + 2*y").unwrap()).is_none());
    }

    #[test]
    fn absorb_into_fraction_field() {
        let r = qring(&["t", "x"]);
        let k = Field::fractions(Field::Rationals, "t").unwrap();
        let r2 = Ring::new(k, &["x"]).unwrap();
        let p = Poly::parse(&r, "t^2*x + t").unwrap();
        let a = p.absorb_variable("t", &r2).unwrap();
        assert_eq!(a.to_string(), "t^2*x + t");
        assert_eq!(Poly::parse(&r2, "t^2*x + t").unwrap(), a);
    }
}
