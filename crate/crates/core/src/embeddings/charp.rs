//! Characteristic-p constructions: the `k(T)` witness isomorphism with
//! `t = T^p`, and the maps `tau`, `chi` for the fibred hypersurface
//! `(x-1) - t^p (y^p - (x-1)^q)^p`.

use serde::Serialize;

use super::{ring, CheckedIdentity, EmbeddingError};
use crate::field::{Field, FieldValue};
use crate::ideals::{ideal_membership, IdealBasis};
use crate::poly::Poly;

fn violated(c: impl Into<String>) -> EmbeddingError {
    EmbeddingError::ParameterConstraintViolated { family: "charp-line", constraint: c.into() }
}

#[derive(Debug, Clone, Serialize)]
pub struct FormOfA1Witness {
    pub field: String,
    pub components: [String; 2],
    pub relation: String,
    pub check: CheckedIdentity,
}

/// Over `F_p(T)` with `t = T^p`, the map
/// `u -> (u^(p^2) + t, (a (u^p + T)^q + u) / b)` parametrizes the curve
/// `x + a^(p^2) x^(pq) - b^(p^2) y^(p^2) - t = 0`.
pub fn formof_a1_witness(p: u32, q: u32, a: &FieldValue, b: &FieldValue) -> Result<FormOfA1Witness, EmbeddingError> {
    let base = Field::prime(p as u64).map_err(|e| violated(e.to_string()))?;
    if q == 0 || q.is_multiple_of(p) {
        return Err(violated(format!("q = {q} must be positive and not a multiple of p = {p}")));
    }
    if !base.contains(a) || !base.contains(b) || b.is_zero() {
        return Err(violated(format!("a and b must lie in F_{p} with b nonzero")));
    }
    let kt = Field::fractions(base, "T").map_err(|e| violated(e.to_string()))?;
    let (a, b) = (kt.lift(a), kt.lift(b));
    let big_t = kt.parameter_value("T").unwrap();
    let t = big_t.pow(p as u64);
    let src = ring(&kt, &["u"]);
    let u = Poly::var(&src, "u")?;
    let pp = p * p;
    let x = u.pow(pp).add(&Poly::constant(&src, t.clone()));
    let shifted = u.pow(p).add(&Poly::constant(&src, big_t));
    let y = shifted.pow(q).scale(&a).add(&u).scale(&b.inv().unwrap());
    let tgt = ring(&kt, &["x", "y"]);
    let (xv, yv) = (Poly::var(&tgt, "x")?, Poly::var(&tgt, "y")?);
    let relation = xv
        .add(&xv.pow(p * q).scale(&a.pow(pp as u64)))
        .sub(&yv.pow(pp).scale(&b.pow(pp as u64)))
        .sub(&Poly::constant(&tgt, t));
    let residual = relation.compose(&[x.clone(), y.clone()])?;
    Ok(FormOfA1Witness {
        field: kt.to_string(),
        components: [x.to_string(), y.to_string()],
        relation: relation.to_string(),
        check: CheckedIdentity::new("witness parametrization satisfies the curve equation", &residual),
    })
}

/// `P`, `tau` and `chi` for the characteristic-p fibred example.
#[derive(Debug, Clone)]
pub struct NotVarKtMaps {
    /// `(x-1) - t^p (y^p - (x-1)^q)^p` in `k[t,x,y]`.
    pub p: Poly,
    /// `tau(s,t) = (t, t^p s^(p^2) + 1, t^q s^(pq) + s)` as images of `t, x, y`.
    pub tau: [Poly; 3],
    /// `chi(t,x,y) = (y - t^q (y^p - (x-1)^q)^q, t)` as images of `s, t`.
    pub chi: [Poly; 2],
}

pub fn not_var_kt_maps(field: &Field, p: u32, q: u32) -> Result<NotVarKtMaps, EmbeddingError> {
    let txy = ring(field, &["t", "x", "y"]);
    let st = ring(field, &["s", "t"]);
    let (t, x, y) = (Poly::var(&txy, "t")?, Poly::var(&txy, "x")?, Poly::var(&txy, "y")?);
    let xm1 = x.sub(&Poly::one(&txy));
    let inner = y.pow(p).sub(&xm1.pow(q));
    let big_p = xm1.sub(&t.pow(p).mul(&inner.pow(p)));
    let chi = [y.sub(&t.pow(q).mul(&inner.pow(q))), t.clone()];
    let (s, ts) = (Poly::var(&st, "s")?, Poly::var(&st, "t")?);
    let tau = [ts.clone(), ts.pow(p).mul(&s.pow(p * p)).add(&Poly::one(&st)), ts.pow(q).mul(&s.pow(p * q)).add(&s)];
    Ok(NotVarKtMaps { p: big_p, tau, chi })
}

impl NotVarKtMaps {
    /// `P o tau = 0`, `chi o tau = id` exactly, and `tau o chi - id` in `(P)`.
    pub fn checks(&self) -> Result<Vec<CheckedIdentity>, EmbeddingError> {
        let mut out = Vec::new();
        out.push(CheckedIdentity::new("P vanishes on tau", &self.p.compose(&self.tau)?));
        let st = self.tau[0].ring().clone();
        for (i, v) in ["s", "t"].iter().enumerate() {
            let back = self.chi[i].compose(&self.tau)?;
            out.push(CheckedIdentity::new(format!("chi o tau recovers {v}"), &back.sub(&Poly::var(&st, v)?)));
        }
        let txy = self.p.ring().clone();
        let ideal = IdealBasis::with_default_order(&txy, vec![self.p.clone()])?;
        for (i, v) in ["t", "x", "y"].iter().enumerate() {
            let diff = self.tau[i].compose(&self.chi)?.sub(&Poly::var(&txy, v)?);
            let residual = match ideal_membership(&diff, &ideal)? {
                m if m.is_member() => Poly::zero(&txy),
                crate::ideals::Membership::NotMember { remainder } => remainder,
                _ => diff,
            };
            out.push(CheckedIdentity::new(format!("tau o chi recovers {v} modulo P"), &residual));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_over_f2_and_f3() {
        let f2 = Field::prime(2).unwrap();
        let w = formof_a1_witness(2, 3, &f2.one(), &f2.one()).unwrap();
        assert!(w.check.holds, "{}", w.check.residual);
        let f3 = Field::prime(3).unwrap();
        let w = formof_a1_witness(3, 2, &f3.one(), &f3.from_i64(2)).unwrap();
        assert!(w.check.holds);
        assert!(formof_a1_witness(3, 6, &f3.one(), &f3.one()).is_err());
    }

    #[test]
    fn tau_and_chi_are_inverse() {
        for (p, q) in [(2, 3), (3, 2)] {
            let f = Field::prime(p as u64).unwrap();
            let maps = not_var_kt_maps(&f, p, q).unwrap();
            let checks = maps.checks().unwrap();
            assert!(checks.iter().all(|c| c.holds), "{checks:?}");
        }
    }
}
