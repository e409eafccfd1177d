//! Words in the elementary automorphisms of the plane and the tame
//! decomposition by degree reduction.

use std::fmt;

use serde::Serialize;

use super::EquivalenceError;
use crate::field::{Field, FieldValue};
use crate::poly::{jacobian_det, Poly, Ring, RingRef};

/// An elementary automorphism of the plane, acting on `(s, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// `(s, t) -> (t, s)`
    Swap,
    /// `(s, t) -> (s, t + p(s))`, with `p` univariate in `s`.
    Triangular(Poly),
    /// `(s, t) -> (xi s, t / xi)`
    Diagonal(FieldValue),
    /// `(s, t) -> (s + c1, t + c2)`
    Translation(FieldValue, FieldValue),
    /// `(s, t) -> (m00 s + m01 t, m10 s + m11 t)`
    AffineLinear([[FieldValue; 2]; 2]),
}

/// The univariate ring `k[s]` holding triangular parameters.
pub fn univariate(field: &Field) -> RingRef {
    Ring::new(field.clone(), &["s"]).expect("valid name")
}

impl Generator {
    pub fn determinant(&self, field: &Field) -> FieldValue {
        match self {
            Generator::Swap => field.from_i64(-1),
            Generator::AffineLinear(m) => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
            _ => field.one(),
        }
    }

    /// Components of the map in the two-variable ring `r`.
    pub fn components(&self, r: &RingRef) -> [Poly; 2] {
        let s = Poly::var_at(r, 0);
        let t = Poly::var_at(r, 1);
        let c = |v: &FieldValue| Poly::constant(r, v.clone());
        match self {
            Generator::Swap => [t, s],
            Generator::Triangular(p) => {
                let ps = p.compose(std::slice::from_ref(&s)).expect("univariate parameter");
                [s, t.add(&ps)]
            }
            Generator::Diagonal(xi) => [s.scale(xi), t.scale(&xi.inv().expect("nonzero"))],
            Generator::Translation(a, b) => [s.add(&c(a)), t.add(&c(b))],
            Generator::AffineLinear(m) => {
                [s.scale(&m[0][0]).add(&t.scale(&m[0][1])), s.scale(&m[1][0]).add(&t.scale(&m[1][1]))]
            }
        }
    }

    pub fn inverse(&self) -> Generator {
        match self {
            Generator::Swap => Generator::Swap,
            Generator::Triangular(p) => Generator::Triangular(p.neg()),
            Generator::Diagonal(xi) => Generator::Diagonal(xi.inv().expect("nonzero")),
            Generator::Translation(a, b) => Generator::Translation(a.neg(), b.neg()),
            Generator::AffineLinear(m) => {
                let det = m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]));
                let inv = det.inv().expect("invertible matrix");
                Generator::AffineLinear([
                    [m[1][1].mul(&inv), m[0][1].neg().mul(&inv)],
                    [m[1][0].neg().mul(&inv), m[0][0].mul(&inv)],
                ])
            }
        }
    }

    fn is_identity(&self) -> bool {
        match self {
            Generator::Swap => false,
            Generator::Triangular(p) => p.is_zero(),
            Generator::Diagonal(xi) => xi.is_one(),
            Generator::Translation(a, b) => a.is_zero() && b.is_zero(),
            Generator::AffineLinear(m) => m[0][0].is_one() && m[1][1].is_one() && m[0][1].is_zero() && m[1][0].is_zero(),
        }
    }

    fn is_swap_matrix(&self) -> bool {
        matches!(self, Generator::AffineLinear(m)
            if m[0][0].is_zero() && m[1][1].is_zero() && m[0][1].is_one() && m[1][0].is_one())
    }
}

impl Generator {
    pub fn render(&self, field: &Field) -> String {
        let v = |x: &FieldValue| field.format_value(x);
        match self {
            Generator::Swap => "Swap".into(),
            Generator::Triangular(p) => format!("Triangular({p})"),
            Generator::Diagonal(xi) => format!("Diagonal({})", v(xi)),
            Generator::Translation(a, b) => format!("Translation({}, {})", v(a), v(b)),
            Generator::AffineLinear(m) => {
                format!("AffineLinear({}, {}; {}, {})", v(&m[0][0]), v(&m[0][1]), v(&m[1][0]), v(&m[1][1]))
            }
        }
    }
}

/// `[g1, ..., gk]` stands for the composite `g1 o ... o gk`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismWord {
    pub field: Field,
    pub factors: Vec<Generator>,
}

impl fmt::Display for AutomorphismWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.factors.iter().map(|g| g.render(&self.field)).collect();
        write!(f, "{}", parts.join(" o "))
    }
}

impl Serialize for AutomorphismWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.factors.iter().map(|g| g.render(&self.field)).collect();
        parts.serialize(s)
    }
}

impl AutomorphismWord {
    pub fn identity(field: &Field) -> AutomorphismWord {
        AutomorphismWord { field: field.clone(), factors: Vec::new() }
    }

    pub fn new(field: &Field, factors: Vec<Generator>) -> AutomorphismWord {
        AutomorphismWord { field: field.clone(), factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Components of the composite in the two-variable ring `r`.
    pub fn components(&self, r: &RingRef) -> [Poly; 2] {
        let mut acc = [Poly::var_at(r, 0), Poly::var_at(r, 1)];
        for g in &self.factors {
            let inner = g.components(r);
            acc = [acc[0].compose(&inner).unwrap(), acc[1].compose(&inner).unwrap()];
        }
        acc
    }

    pub fn determinant(&self) -> FieldValue {
        self.factors.iter().fold(self.field.one(), |acc, g| acc.mul(&g.determinant(&self.field)))
    }

    pub fn inverse(&self) -> AutomorphismWord {
        AutomorphismWord { field: self.field.clone(), factors: self.factors.iter().rev().map(|g| g.inverse()).collect() }
    }

    pub fn then(&self, inner: &AutomorphismWord) -> AutomorphismWord {
        let mut factors = self.factors.clone();
        factors.extend(inner.factors.iter().cloned());
        AutomorphismWord { field: self.field.clone(), factors }
    }

    pub fn swap_count(&self) -> usize {
        self.factors.iter().filter(|g| matches!(g, Generator::Swap)).count()
    }

    /// Drop identities, read the coordinate swap matrix as `Swap`, merge
    /// neighbouring triangular factors and cancel pairs of swaps.
    pub fn simplify(&self) -> AutomorphismWord {
        let mut out: Vec<Generator> = Vec::new();
        for g in &self.factors {
            let g = if g.is_swap_matrix() { Generator::Swap } else { g.clone() };
            if g.is_identity() {
                continue;
            }
            match (out.last_mut(), &g) {
                (Some(Generator::Swap), Generator::Swap) => {
                    out.pop();
                }
                (Some(Generator::Triangular(p)), Generator::Triangular(q)) => {
                    let sum = p.add(q);
                    if sum.is_zero() {
                        out.pop();
                    } else {
                        *p = sum;
                    }
                }
                _ => out.push(g),
            }
        }
        AutomorphismWord { field: self.field.clone(), factors: out }
    }

    /// Rewrite into `Swap` and `Triangular` factors only. Fails when an
    /// affine part has determinant other than `1` or `-1`.
    pub fn elementary(&self) -> Result<AutomorphismWord, EquivalenceError> {
        let f = &self.field;
        let uni = univariate(f);
        let s = Poly::var_at(&uni, 0);
        let tri = |c: &FieldValue| Generator::Triangular(s.scale(c));
        let upper = |c: &FieldValue| vec![Generator::Swap, Generator::Triangular(s.scale(c)), Generator::Swap];
        let mut out = Vec::new();
        for g in &self.factors {
            match g {
                Generator::Swap | Generator::Triangular(_) => out.push(g.clone()),
                Generator::Translation(e, h) => {
                    // (s + e, t + h) = Tri(h) o Swap o Tri(e) o Swap
                    out.push(Generator::Triangular(Poly::constant(&uni, h.clone())));
                    out.push(Generator::Swap);
                    out.push(Generator::Triangular(Poly::constant(&uni, e.clone())));
                    out.push(Generator::Swap);
                }
                Generator::Diagonal(xi) => {
                    let m = [[xi.clone(), f.zero()], [f.zero(), xi.inv().unwrap()]];
                    out.extend(sl2_transvections(&m, &tri, &upper, f));
                }
                Generator::AffineLinear(m) => {
                    let det = g.determinant(f);
                    if det.is_one() {
                        out.extend(sl2_transvections(m, &tri, &upper, f));
                    } else if det == f.from_i64(-1) {
                        // M = S (S M) with S the coordinate swap.
                        out.push(Generator::Swap);
                        let sm = [m[1].clone(), m[0].clone()];
                        out.extend(sl2_transvections(&sm, &tri, &upper, f));
                    } else {
                        return Err(EquivalenceError::NotLiftable(format!("affine factor {} has determinant {}", g.render(f), f.format_value(&det))));
                    }
                }
            }
        }
        Ok(AutomorphismWord { field: f.clone(), factors: out }.simplify())
    }
}

/// `M = U((a-1)/c) L(c) U((d-1)/c)` for `det M = 1`, `c != 0`, with
/// `U(x) = (s + x t, t)` and `L(c) = (s, t + c s)`. When `c = 0`, write
/// `M = L(-1) (L(1) M)`.
fn sl2_transvections(
    m: &[[FieldValue; 2]; 2],
    tri: &dyn Fn(&FieldValue) -> Generator,
    upper: &dyn Fn(&FieldValue) -> Vec<Generator>,
    f: &Field,
) -> Vec<Generator> {
    let [[a, b], [c, d]] = m;
    let mut out = Vec::new();
    let (a, b, c, d) = if c.is_zero() {
        out.push(tri(&f.from_i64(-1)));
        (a.clone(), b.clone(), a.clone(), b.add(d))
    } else {
        (a.clone(), b.clone(), c.clone(), d.clone())
    };
    let _ = b;
    let cinv = c.inv().unwrap();
    out.extend(upper(&a.sub(&f.one()).mul(&cinv)));
    out.push(tri(&c));
    out.extend(upper(&d.sub(&f.one()).mul(&cinv)));
    out
}

/// Tame decomposition of `(f, g)` in a two-variable ring.
#[derive(Debug, Clone)]
pub struct TameDecomposition {
    pub word: AutomorphismWord,
    pub ring: RingRef,
}

fn lead_coeff(p: &Poly) -> FieldValue {
    p.leading_term().map(|(_, c)| c.clone()).unwrap()
}

/// `c` and `k` with `leading_form(a) = c * leading_form(b)^k`, if any.
fn match_leading(a: &Poly, b: &Poly) -> Option<(FieldValue, u32)> {
    let da = a.total_degree().finite()?;
    let db = b.total_degree().finite()?;
    if db == 0 || da % db != 0 {
        return None;
    }
    let k = da / db;
    let la = a.leading_form();
    let lbk = b.leading_form().pow(k);
    let c = lead_coeff(&la).checked_div(&lead_coeff(&lbk))?;
    (la == lbk.scale(&c)).then_some((c, k))
}

/// Degree reduction: repeatedly subtract `c g^k` from `f` (or `c f^k` from
/// `g`) to lower the larger degree, then finish with an affine map. The
/// returned word recomposes to `(f, g)`; this is checked before returning.
pub fn tame_decompose(f: &Poly, g: &Poly) -> Result<TameDecomposition, EquivalenceError> {
    f.check_ring(g)?;
    let ring = f.ring().clone();
    if ring.nvars() != 2 {
        return Err(EquivalenceError::InvalidInput("maps of the plane need a ring in two variables".into()));
    }
    let field = ring.field().clone();
    let uni = univariate(&field);
    let s = Poly::var_at(&uni, 0);
    let stuck = |f: &Poly, g: &Poly| EquivalenceError::DecompositionFailed { f: f.to_string(), g: g.to_string() };
    let (mut f, mut g) = (f.clone(), g.clone());
    let mut factors = Vec::new();
    loop {
        let (Some(df), Some(dg)) = (f.total_degree().finite(), g.total_degree().finite()) else {
            return Err(stuck(&f, &g));
        };
        if df <= 1 && dg <= 1 {
            break;
        }
        let reduce_f = || match_leading(&f, &g);
        let reduce_g = || match_leading(&g, &f);
        let step = if df >= dg {
            reduce_f().map(|r| (true, r)).or_else(|| reduce_g().map(|r| (false, r)))
        } else {
            reduce_g().map(|r| (false, r)).or_else(|| reduce_f().map(|r| (true, r)))
        };
        let Some((on_f, (c, k))) = step else { return Err(stuck(&f, &g)) };
        let p = s.pow(k).scale(&c);
        if on_f {
            f = f.sub(&g.pow(k).scale(&c));
            factors.extend([Generator::Swap, Generator::Triangular(p), Generator::Swap]);
        } else {
            g = g.sub(&f.pow(k).scale(&c));
            factors.push(Generator::Triangular(p));
        }
        if f.total_degree().finite().unwrap_or(0) == 0 && g.total_degree().finite().unwrap_or(0) == 0 {
            return Err(stuck(&f, &g));
        }
    }
    let coeff = |p: &Poly, i: usize| p.coefficient(&crate::poly::Monomial::var(2, i, 1));
    let m = [[coeff(&f, 0), coeff(&f, 1)], [coeff(&g, 0), coeff(&g, 1)]];
    let det = m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]));
    if det.is_zero() {
        return Err(stuck(&f, &g));
    }
    factors.push(Generator::Translation(f.constant_term(), g.constant_term()));
    factors.push(Generator::AffineLinear(m));
    let word = AutomorphismWord { field, factors }.simplify();
    Ok(TameDecomposition { word, ring })
}

impl TameDecomposition {
    pub fn recomposes_to(&self, f: &Poly, g: &Poly) -> bool {
        let [a, b] = self.word.components(&self.ring);
        a == *f && b == *g
    }
}

/// Decompose and insist that the word recomposes exactly.
pub fn tame_decompose_checked(f: &Poly, g: &Poly) -> Result<TameDecomposition, EquivalenceError> {
    let d = tame_decompose(f, g)?;
    if !d.recomposes_to(f, g) {
        return Err(EquivalenceError::DecompositionFailed { f: f.to_string(), g: g.to_string() });
    }
    Ok(d)
}

/// Jacobian determinant of the word's components in `r`.
pub fn word_jacobian(word: &AutomorphismWord, r: &RingRef) -> Poly {
    let [a, b] = word.components(r);
    jacobian_det(&a, &b, &r.vars()[0], &r.vars()[1]).expect("ring variables")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> RingRef {
        Ring::new(Field::Rationals, &["x", "y"]).unwrap()
    }

    fn dec(f: &str, g: &str) -> TameDecomposition {
        let r = ring();
        tame_decompose_checked(&Poly::parse(&r, f).unwrap(), &Poly::parse(&r, g).unwrap()).unwrap()
    }

    #[test]
    fn golden_words() {
        assert!(dec("x", "y").word.is_empty());
        assert_eq!(dec("x", "y + x^2").word.to_string(), "Triangular(s^2)");
        assert_eq!(dec("y + x^2", "x").word.to_string(), "Swap o Triangular(s^2)");
        let w = dec("x + y^2", "y + (x + y^2)^2").word;
        assert_eq!(w.to_string(), "Triangular(s^2) o Swap o Triangular(s^2) o Swap");
    }

    #[test]
    fn elementary_rewrite_keeps_map() {
        let r = ring();
        let f = Field::Rationals;
        let half = f.from_i64(2).inv().unwrap();
        for m in [
            [[f.from_i64(2), f.zero()], [f.zero(), half.clone()]],
            [[f.from_i64(1), f.from_i64(3)], [f.from_i64(1), f.from_i64(4)]],
            [[f.zero(), f.one()], [f.one(), f.from_i64(5)]],
        ] {
            let w = AutomorphismWord::new(&f, vec![Generator::AffineLinear(m), Generator::Translation(f.one(), half.clone())]);
            let e = w.elementary().unwrap();
            assert!(e.factors.iter().all(|g| matches!(g, Generator::Swap | Generator::Triangular(_))));
            assert_eq!(e.components(&r), w.components(&r));
        }
    }

    #[test]
    fn non_automorphism_is_stuck() {
        let r = ring();
        let res = tame_decompose(&Poly::parse(&r, "x^2").unwrap(), &Poly::parse(&r, "y").unwrap());
        assert!(matches!(res, Err(EquivalenceError::DecompositionFailed { .. })));
    }
}
