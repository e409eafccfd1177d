//! The trefoil curve `t -> (t^3 - 3t, t^4 - 4t^2 - 1, t^5 - 10t)` and its
//! `SL2` version.

use super::{ring, CheckedIdentity, EmbeddingError};
use crate::field::Field;
use crate::poly::{Poly, RingRef};

/// `[t^3 - 3t, t^4 - 4t^2 - 1, t^5 - 10t]` in the ring of `t`.
pub fn shastri_gammas(r: &RingRef) -> [Poly; 3] {
    let p = |s: &str| Poly::parse(r, s).expect("ring has t");
    [p("t^3 - 3*t"), p("t^4 - 4*t^2 - 1"), p("t^5 - 10*t")]
}

/// `t = 3z - 12x - 5xy + yz - x^3` in `k[x,y,z]`.
pub(super) fn left_inverse_a3(r: &RingRef) -> Result<Poly, EmbeddingError> {
    Ok(Poly::parse(r, "3*z - 12*x - 5*x*y + y*z - x^3")?)
}

/// In `k[t,u,x,y]` the third coordinate is recovered as
/// `B(x) u - A(t) y` with `A = (t^2 + 9t + 24)/16`, `B = x(x^2 - 4)/16`;
/// substituting into the cubic inverse gives `t`.
pub fn shastri_left_inverse_t(r: &RingRef) -> Result<Poly, EmbeddingError> {
    left_inverse_sl2(r)
}

pub(super) fn left_inverse_sl2(r: &RingRef) -> Result<Poly, EmbeddingError> {
    let p = |s: &str| Poly::parse(r, s).map_err(EmbeddingError::from);
    let g3 = p("x*(x^2 - 4)/16*u - (t^2 + 9*t + 24)/16*y")?;
    let a3 = ring(r.field(), &["x", "y", "z"]);
    Ok(left_inverse_a3(&a3)?.compose(&[p("x")?, p("t")?, g3])?)
}

/// The cubic left inverse, the quartic relation and the `SL2` relation.
pub fn shastri_identities(field: &Field) -> Result<Vec<CheckedIdentity>, EmbeddingError> {
    let tr = ring(field, &["t"]);
    let t = Poly::var(&tr, "t")?;
    let g = shastri_gammas(&tr);
    let mut out = Vec::new();
    let a3 = ring(field, &["x", "y", "z"]);
    let inv = left_inverse_a3(&a3)?.compose(&g)?;
    out.push(CheckedIdentity::new("3g3 - 12g1 - 5g1g2 + g2g3 - g1^3 = t", &inv.sub(&t)));
    let quartic_ring = ring(field, &["t", "x"]);
    let quartic = Poly::parse(&quartic_ring, "x^2*(x^2 - 4) - t*(t^2 + 9*t + 24)")?;
    let val = quartic.compose(&[g[1].clone(), g[0].clone()])?;
    out.push(CheckedIdentity::new("g1^2(g1^2 - 4) - g2(g2^2 + 9g2 + 24) = 16", &val.sub(&Poly::from_i64(&tr, 16))));
    if field.characteristic() != 2 {
        let spec = super::construct(field, super::Family::ShastriSl2)?;
        out.push(spec.verify_on_quadric()?);
        let w = left_inverse_sl2(&spec.target)?.compose(&spec.components)?;
        out.push(CheckedIdentity::new("SL2 left inverse recovers t", &w.sub(&t)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_over_q_and_f5() {
        for f in [Field::Rationals, Field::prime(5).unwrap()] {
            let ids = shastri_identities(&f).unwrap();
            assert_eq!(ids.len(), 4);
            assert!(ids.iter().all(|c| c.holds), "{ids:?}");
        }
    }
}
