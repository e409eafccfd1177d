//! The surface `E = {xy - tu = 1, ty = x(x - 1)}`, its witness chain, and
//! the left inverse of the simplified embedding into `A4`.

use serde::Serialize;

use super::certificate::ChainStep;
use super::{construct, ring, sl2_ring, CheckedIdentity, EmbeddingError, Family};
use crate::field::Field;
use crate::ideals::{ideal_membership, IdealBasis, Membership};
use crate::poly::{Poly, RingRef};

/// The two cleared identities behind `(x - t - 1)/t^2 ∈ k[E]`:
/// `t (y^2 - ux + u) = x - 1` and `t^2 (u - (x+1)((x-1)/t)^2) = x - t - 1`.
pub(super) fn chain_steps(r: &RingRef) -> Result<Vec<ChainStep>, EmbeddingError> {
    let p = |s: &str| Poly::parse(r, s).map_err(EmbeddingError::from);
    Ok(vec![
        ChainStep { label: "t*(y^2 - u*x + u) = x - 1 on E".into(), identity: p("t*(y^2 - u*x + u) - (x - 1)")? },
        ChainStep {
            label: "t^2*u - (x + 1)*(x - 1)^2 = x - t - 1 on E".into(),
            identity: p("t^2*u - (x + 1)*(x - 1)^2 - (x - t - 1)")?,
        },
    ])
}

/// Checks both chain identities by membership in the ideal of `E`.
pub fn surface_e_chain(field: &Field) -> Result<Vec<CheckedIdentity>, EmbeddingError> {
    let r = sl2_ring(field);
    let ideal = IdealBasis::with_default_order(
        &r,
        vec![Poly::parse(&r, "x*y - t*u - 1")?, Poly::parse(&r, "t*y - x*(x - 1)")?],
    )?;
    let mut out = Vec::new();
    for step in chain_steps(&r)? {
        let residual = match ideal_membership(&step.identity, &ideal)? {
            Membership::Member { verified: true, .. } => Poly::zero(&r),
            Membership::Member { .. } => step.identity.clone(),
            Membership::NotMember { remainder } => remainder,
        };
        out.push(CheckedIdentity::new(step.label, &residual));
    }
    Ok(out)
}

/// An elementary automorphism of `A4` in coordinates `(a, b, c, d)`, given
/// by the images of the coordinates and of their inverse.
struct Step {
    label: &'static str,
    forward: [&'static str; 4],
    inverse: [&'static str; 4],
}

/// From the matrix `(x t; u y)` of the `E` embedding, conjugation by
/// `A = (1 0; -1 1)` followed by three elementary automorphisms gives
/// `(t, t^2 s, ts(1 + t^2 s), s + t^2 s^2 (2 - t + t^2 s))`.
const STEPS: [Step; 4] = [
    Step {
        label: "conjugate by A and read off (t, x, y, u)",
        forward: ["t", "x - t", "y - t", "u - x - y + t"],
        inverse: ["a", "d + b + c + a", "b + a", "c + a"],
    },
    Step { label: "b -> b - 1", forward: ["a", "b - 1", "c", "d"], inverse: ["a", "b + 1", "c", "d"] },
    Step { label: "c -> c - 1 - 2b", forward: ["a", "b", "c - 1 - 2*b", "d"], inverse: ["a", "b", "c + 1 + 2*b", "d"] },
    Step { label: "d -> d - 3c", forward: ["a", "b", "c", "d - 3*c"], inverse: ["a", "b", "c", "d + 3*c"] },
];

#[derive(Debug, Clone, Serialize)]
pub struct FinalA4Inverse {
    pub steps: Vec<String>,
    pub components: Vec<String>,
    /// `e_t` and `e_s` in `k[a,b,c,d]`.
    pub e_t: String,
    pub e_s: String,
    pub max_degree: u32,
    pub identities: Vec<CheckedIdentity>,
}

fn a4(field: &Field) -> RingRef {
    ring(field, &["a", "b", "c", "d"])
}

/// The simplified embedding `(t, t^2 s, ts(1 + t^2 s), s + t^2 s^2 (2 - t + t^2 s))`.
pub fn simplified_embedding(field: &Field) -> Result<Vec<Poly>, EmbeddingError> {
    let st = ring(field, &["s", "t"]);
    ["t", "t^2*s", "t*s*(1 + t^2*s)", "s + t^2*s^2*(2 - t + t^2*s)"]
        .iter()
        .map(|e| Poly::parse(&st, e).map_err(EmbeddingError::from))
        .collect()
}

/// Replays the simplification chain on the `E` embedding and pulls its left
/// inverse back through the inverse steps, then checks it on the
/// simplified components.
pub fn final_a4_left_inverse(field: &Field) -> Result<FinalA4Inverse, EmbeddingError> {
    final_a4_left_inverse_for(&simplified_embedding(field)?)
}

pub fn final_a4_left_inverse_for(components: &[Poly]) -> Result<FinalA4Inverse, EmbeddingError> {
    let field = components.first().ok_or_else(|| EmbeddingError::NotOfRequiredForm("no components".into()))?.field().clone();
    if components.len() != 4 {
        return Err(EmbeddingError::NotOfRequiredForm("four components are required".into()));
    }
    let e = construct(&field, Family::SurfaceE)?;
    let sl2 = e.target.clone();
    let r4 = a4(&field);
    let parse_all = |r: &RingRef, xs: &[&str; 4]| -> Result<Vec<Poly>, EmbeddingError> {
        xs.iter().map(|s| Poly::parse(r, s).map_err(EmbeddingError::from)).collect()
    };
    let mut identities = Vec::new();

    // Forward replay: the steps carry the E embedding to the simplified one.
    let first = parse_all(&sl2, &STEPS[0].forward)?;
    let mut current: Vec<Poly> = e.transform(&first)?;
    for step in &STEPS[1..] {
        let images = parse_all(&r4, &step.forward)?;
        current = images.iter().map(|im| im.compose(&current)).collect::<Result<_, _>>()?;
    }
    let simplified = simplified_embedding(&field)?;
    for (i, (got, want)) in current.iter().zip(&simplified).enumerate() {
        identities.push(CheckedIdentity::new(format!("replayed chain, component {}", i + 1), &got.sub(want)));
    }

    // Pull the left inverse of E back: compose inverse steps, last first.
    let mut pull: Vec<Poly> = ["a", "b", "c", "d"].iter().map(|v| Poly::var(&r4, v).unwrap()).collect();
    for step in STEPS[1..].iter().rev() {
        let inv = parse_all(&r4, &step.inverse)?;
        pull = inv.iter().map(|q| q.compose(&pull)).collect::<Result<_, _>>()?;
    }
    // Images of (t, u, x, y) in k[a,b,c,d].
    let to_sl2 = parse_all(&r4, &STEPS[0].inverse)?;
    let to_sl2: Vec<Poly> = to_sl2.iter().map(|p| p.compose(&pull)).collect::<Result<_, _>>()?;
    let w_s = Poly::parse(&sl2, "u - (x + 1)*(y^2 - u*x + u)^2")?;
    let e_s = w_s.compose(&to_sl2)?;
    let e_t = Poly::parse(&sl2, "t")?.compose(&to_sl2)?;

    let st = components[0].ring().clone();
    let back_s = e_s.compose(components)?;
    let back_t = e_t.compose(components)?;
    let s = Poly::var(&st, "s")?;
    let t = Poly::var(&st, "t")?;
    let check_s = CheckedIdentity::new("e_s(components) = s", &back_s.sub(&s));
    let check_t = CheckedIdentity::new("e_t(components) = t", &back_t.sub(&t));
    if !check_s.holds || !check_t.holds {
        let bad = if check_s.holds { check_t } else { check_s };
        return Err(EmbeddingError::DerivationFailed { residual: bad.residual });
    }
    identities.push(check_t);
    identities.push(check_s);
    let max_degree = e_s.total_degree().finite().unwrap_or(0);
    Ok(FinalA4Inverse {
        steps: STEPS.iter().map(|s| s.label.to_string()).collect(),
        components: components.iter().map(|c| c.to_string()).collect(),
        e_t: e_t.to_string(),
        e_s: e_s.to_string(),
        max_degree,
        identities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_holds() {
        let ids = surface_e_chain(&Field::Rationals).unwrap();
        assert!(ids.iter().all(|c| c.holds), "{ids:?}");
    }

    #[test]
    fn final_inverse() {
        let inv = final_a4_left_inverse(&Field::Rationals).unwrap();
        assert!(inv.identities.iter().all(|c| c.holds), "{:?}", inv.identities);
        assert_eq!(inv.e_t, "a");
        assert!(inv.max_degree <= 8);
        let mut comps = simplified_embedding(&Field::Rationals).unwrap();
        comps[1] = comps[1].add(&Poly::one(comps[1].ring()));
        assert!(matches!(final_a4_left_inverse_for(&comps), Err(EmbeddingError::DerivationFailed { .. })));
    }
}
