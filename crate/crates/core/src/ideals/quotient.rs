//! Normal forms in the coordinate ring of `SL2` and in the rings
//! `k[t,x,y][u] / (t^n u - h)`.

use serde::Serialize;

use super::groebner::{ideal_membership, IdealBasis, Membership};
use super::IdealError;
use crate::poly::{Monomial, Poly, RingRef};

fn require(ring: &RingRef, name: &str) -> Result<usize, IdealError> {
    ring.index_of(name).ok_or_else(|| IdealError::MissingVariable(name.to_string()))
}

/// `k[t,u,x,y] / (xy - tu - 1)`, the coordinate ring of `SL2` with matrix
/// layout `(x t; u y)`.
#[derive(Debug, Clone)]
pub struct Sl2Quotient {
    ring: RingRef,
    t: usize,
    u: usize,
    x: usize,
    y: usize,
}

impl Sl2Quotient {
    pub fn new(ring: &RingRef) -> Result<Sl2Quotient, IdealError> {
        Ok(Sl2Quotient {
            ring: ring.clone(),
            t: require(ring, "t")?,
            u: require(ring, "u")?,
            x: require(ring, "x")?,
            y: require(ring, "y")?,
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// `xy - tu - 1`.
    pub fn relation(&self) -> Poly {
        let v = |i| Poly::var_at(&self.ring, i);
        v(self.x).mul(&v(self.y)).sub(&v(self.t).mul(&v(self.u))).sub(&Poly::one(&self.ring))
    }

    /// Rewrite every `xy` as `tu + 1`. The result has no monomial divisible
    /// by `xy`, which makes it the canonical representative.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        let tu1 = Poly::var_at(&self.ring, self.t).mul(&Poly::var_at(&self.ring, self.u)).add(&Poly::one(&self.ring));
        let mut powers = vec![Poly::one(&self.ring)];
        let mut out = Poly::zero(&self.ring);
        for (m, c) in f.terms() {
            let k = m.exps()[self.x].min(m.exps()[self.y]) as usize;
            if k == 0 {
                out.add_term(m.clone(), c);
                continue;
            }
            while powers.len() <= k {
                let next = powers.last().unwrap().mul(&tu1);
                powers.push(next);
            }
            let mut e = m.exps().to_vec();
            e[self.x] -= k as u32;
            e[self.y] -= k as u32;
            out = out.add(&powers[k].mul_term(&Monomial::new(e), c));
        }
        out
    }

    pub fn is_zero(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Hypothesis status of `h` in `t^n u = h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KeyHypothesis {
    /// `h = xy - 1`, for which the decomposition is known to be unique.
    Whitelisted,
    /// Other `h`: the normal form is computed but its uniqueness rests on
    /// a factorial-closure hypothesis that is not checked.
    Unverified,
}

/// `f = base + sum_{i>=1} tail[i-1] * u^i` with every tail coefficient of
/// `t`-degree below `n`.
#[derive(Debug, Clone)]
pub struct KeyNormalForm {
    pub base: Poly,
    pub tail: Vec<Poly>,
    pub n: u32,
    pub h: Poly,
    pub hypothesis: KeyHypothesis,
}

impl KeyNormalForm {
    pub fn recompose(&self) -> Poly {
        let ring = self.base.ring();
        let u = Poly::var(ring, "u").unwrap();
        let mut acc = self.base.clone();
        let mut up = Poly::one(ring);
        for c in &self.tail {
            up = up.mul(&u);
            acc = acc.add(&c.mul(&up));
        }
        acc
    }

    pub fn warning(&self) -> Option<String> {
        match self.hypothesis {
            KeyHypothesis::Whitelisted => None,
            KeyHypothesis::Unverified => {
                Some(format!("uniqueness for h = {} relies on an unchecked factorial-closure hypothesis", self.h))
            }
        }
    }
}

/// `t^n u - h` in the ring of `f`.
pub fn key_relation(ring: &RingRef, n: u32, h: &Poly) -> Result<Poly, IdealError> {
    let t = Poly::var_at(ring, require(ring, "t")?);
    let u = Poly::var_at(ring, require(ring, "u")?);
    Ok(t.pow(n).mul(&u).sub(h))
}

fn is_xy_minus_one(h: &Poly) -> bool {
    let ring = h.ring();
    match Poly::parse(ring, "x*y - 1") {
        Ok(p) => p == *h,
        Err(_) => false,
    }
}

/// Key normal form of `f` in `k[t,x,y][u] / (t^n u - h)`: from the top
/// power of `u` down, split `f_r = t^n A + B` with `deg_t B < n` and push
/// `h A` into `f_{r-1}`.
pub fn key_normal_form(f: &Poly, n: u32, h: &Poly) -> Result<KeyNormalForm, IdealError> {
    f.check_ring(h)?;
    let ring = f.ring();
    let ti = require(ring, "t")?;
    let ui = require(ring, "u")?;
    if n == 0 {
        return Err(IdealError::InvalidArgument("n must be at least 1".into()));
    }
    if h.involves(ui) {
        return Err(IdealError::InvalidArgument(format!("h = {h} involves u")));
    }
    let mut parts = f.coefficients_in(ui);
    for r in (1..parts.len()).rev() {
        let (mut high, mut low) = (Poly::zero(ring), Poly::zero(ring));
        for (m, c) in parts[r].terms() {
            if m.exps()[ti] >= n {
                let mut e = m.exps().to_vec();
                e[ti] -= n;
                high.add_term(Monomial::new(e), c);
            } else {
                low.add_term(m.clone(), c);
            }
        }
        parts[r] = low;
        parts[r - 1] = parts[r - 1].add(&high.mul(h));
    }
    let base = parts.first().cloned().unwrap_or_else(|| Poly::zero(ring));
    let mut tail: Vec<Poly> = parts.into_iter().skip(1).collect();
    while tail.last().is_some_and(|p| p.is_zero()) {
        tail.pop();
    }
    let hypothesis = if is_xy_minus_one(h) { KeyHypothesis::Whitelisted } else { KeyHypothesis::Unverified };
    Ok(KeyNormalForm { base, tail, n, h: h.clone(), hypothesis })
}

/// Whether an endomorphism of `k[t,u,x,y]` (images given in the ring's
/// variable order) induces an automorphism-compatible map of the quotient
/// that fixes `t` and preserves the subring `k[t,x,y]`.
#[derive(Debug, Clone)]
pub struct PreservationReport {
    pub fixes_t: bool,
    pub relation_preserved: bool,
    /// Key normal forms of the images of `x` and `y`.
    pub x_image: KeyNormalForm,
    pub y_image: KeyNormalForm,
    pub subring_preserved: bool,
    /// Images of `t^n` and `h` lie in `(t^n, h)`.
    pub ideal_preserved: bool,
}

impl PreservationReport {
    pub fn holds(&self) -> bool {
        self.fixes_t && self.relation_preserved && self.subring_preserved && self.ideal_preserved
    }
}

pub fn preserved_subring_check(images: &[Poly], n: u32, h: &Poly) -> Result<PreservationReport, IdealError> {
    let ring = h.ring().clone();
    if images.len() != ring.nvars() {
        return Err(IdealError::InvalidArgument("one image per variable is required".into()));
    }
    for im in images {
        im.check_ring(h)?;
    }
    let ti = require(&ring, "t")?;
    let xi = require(&ring, "x")?;
    let yi = require(&ring, "y")?;
    let rel = key_relation(&ring, n, h)?;
    let relation_ideal = IdealBasis::with_default_order(&ring, vec![rel.clone()])?;
    let fixes_t = images[ti] == Poly::var_at(&ring, ti);
    let moved = rel.compose(images)?;
    let relation_preserved = ideal_membership(&moved, &relation_ideal)?.is_member();
    let x_image = key_normal_form(&images[xi], n, h)?;
    let y_image = key_normal_form(&images[yi], n, h)?;
    let subring_preserved = x_image.tail.is_empty() && y_image.tail.is_empty();
    let mut ideal_preserved = false;
    if subring_preserved {
        // On k[t,x,y] the map is t -> t, x -> base(x), y -> base(y).
        let mut sub = images.to_vec();
        sub[xi] = x_image.base.clone();
        sub[yi] = y_image.base.clone();
        let tn = Poly::var_at(&ring, ti).pow(n);
        let ideal = IdealBasis::with_default_order(&ring, vec![tn.clone(), h.clone()])?;
        let a = ideal_membership(&tn.compose(&sub)?, &ideal)?;
        let b = ideal_membership(&h.compose(&sub)?, &ideal)?;
        ideal_preserved = matches!((a, b), (Membership::Member { .. }, Membership::Member { .. }));
    }
    Ok(PreservationReport { fixes_t, relation_preserved, x_image, y_image, subring_preserved, ideal_preserved })
}
