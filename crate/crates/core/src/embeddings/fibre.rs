//! Degenerate-fibre profiles and the fibred chart of a hypersurface
//! `{P = 0} ∩ SL2` with `P = a t^n y + S(t,x)`.

use serde::Serialize;

use super::{ring, EmbeddingError};
use crate::field::FieldValue;
use crate::poly::{Degree, Monomial, Poly};

/// Shape of `P(0,x,y)` when it equals `mu * v^m * (v - lambda)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FibreProfile {
    Shape { axis: String, m: u32, mu: FieldValue, lambda: FieldValue },
    NotOfRequiredForm(ProfileFailure),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ProfileFailure {
    /// `P(0,x,y)` involves both `x` and `y`.
    MixedVariables(String),
    /// `P(0,x,y)` is constant.
    Constant(String),
    /// After dividing out the largest power of the axis the quotient is not
    /// of the form `mu (v - lambda)` with `lambda != 0`.
    QuotientNotLinear { axis: String, quotient: String },
}

impl FibreProfile {
    /// `mu v^m (v - lambda)` in the ring of `p`.
    pub fn expand(&self, p: &Poly) -> Option<Poly> {
        let FibreProfile::Shape { axis, m, mu, lambda } = self else { return None };
        let v = Poly::var(p.ring(), axis).ok()?;
        let lin = v.sub(&Poly::constant(p.ring(), lambda.clone()));
        Some(v.pow(*m).mul(&lin).scale(mu))
    }
}

/// Profile `P(0,x,y)` by exact division: no factorization is attempted.
pub fn degenerate_fibre_profile(p: &Poly) -> Result<FibreProfile, EmbeddingError> {
    let r = p.ring();
    let ti = r.index_of("t").ok_or_else(|| EmbeddingError::NotOfRequiredForm("P must live in k[t,x,y]".into()))?;
    let p0 = p.eval_var(ti, &r.field().zero());
    let axes: Vec<&str> = ["x", "y"].into_iter().filter(|v| r.index_of(v).is_some_and(|i| p0.involves(i))).collect();
    let axis = match axes.as_slice() {
        [] => return Ok(FibreProfile::NotOfRequiredForm(ProfileFailure::Constant(p0.to_string()))),
        [a] => *a,
        _ => return Ok(FibreProfile::NotOfRequiredForm(ProfileFailure::MixedVariables(p0.to_string()))),
    };
    if p0.support_vars().len() > 1 {
        return Ok(FibreProfile::NotOfRequiredForm(ProfileFailure::MixedVariables(p0.to_string())));
    }
    let ai = r.index_of(axis).unwrap();
    let m = p0.valuation_in(ai).finite().unwrap_or(0);
    let quotient = p0.exact_div(&Poly::var_at(r, ai).pow(m)).expect("valuation divides");
    let fail = || {
        FibreProfile::NotOfRequiredForm(ProfileFailure::QuotientNotLinear {
            axis: axis.to_string(),
            quotient: quotient.to_string(),
        })
    };
    if quotient.degree_in(ai) != Degree::Finite(1) {
        return Ok(fail());
    }
    let mu = quotient.coefficient(&Monomial::var(r.nvars(), ai, 1));
    let lambda = quotient.constant_term().neg().checked_div(&mu).unwrap();
    if lambda.is_zero() {
        return Ok(fail());
    }
    let profile = FibreProfile::Shape { axis: axis.to_string(), m, mu, lambda };
    debug_assert_eq!(profile.expand(p).as_ref(), Some(&p0));
    Ok(profile)
}

/// Sufficient criterion for all fibres over `t != 0` being lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FibreTriviality {
    /// `P = unit * t^n * v + d` with `d` free of `v`: every fibre off `t = 0`
    /// is a graph over the other coordinate.
    AllFibresOffZeroAreLines { axis: String, n: u32, coefficient: String },
    Inconclusive(String),
}

pub fn fibre_triviality_check(p: &Poly) -> FibreTriviality {
    let r = p.ring();
    let Some(ti) = r.index_of("t") else {
        return FibreTriviality::Inconclusive("P does not involve the fibration variable t".into());
    };
    let mut reasons = Vec::new();
    for axis in ["y", "x"] {
        let Some(ai) = r.index_of(axis) else { continue };
        let parts = p.coefficients_in(ai);
        if parts.len() != 2 {
            reasons.push(format!("P is not of degree 1 in {axis}"));
            continue;
        }
        let c = &parts[1];
        if c.support_vars().iter().any(|&i| i != ti) {
            reasons.push(format!("the coefficient {c} of {axis} is not in k[t]"));
            continue;
        }
        // c = unit * t^n exactly when it is a single term.
        if c.len() != 1 {
            reasons.push(format!("the coefficient {c} of {axis} has a root away from t = 0"));
            continue;
        }
        let n = c.valuation_in(ti).finite().unwrap();
        return FibreTriviality::AllFibresOffZeroAreLines { axis: axis.into(), n, coefficient: c.to_string() };
    }
    FibreTriviality::Inconclusive(reasons.join("; "))
}

/// The embedding `A2 -> SL2` (components `t, u, x, y` in `k[s,t]`) whose
/// image is `{P = 0}`, for `P = a t^n y + S(t,x)` with `S(0,x)` of the shape
/// `mu x^m (x - lambda)`. `x = phi(t) + t^(n+1) s`, where `phi` is the Hensel
/// lift of `lambda` solving `x S(t,x) + a t^n = 0 mod t^(n+1)`; this makes
/// both `y = -S/(a t^n)` and `u = (xy - 1)/t` polynomial.
pub fn fibred_chart(p: &Poly) -> Result<[Poly; 4], EmbeddingError> {
    let r = p.ring();
    let field = r.field();
    let bad = |m: &str| EmbeddingError::NotOfRequiredForm(m.to_string());
    let (ti, yi) = match (r.index_of("t"), r.index_of("x"), r.index_of("y")) {
        (Some(a), Some(_), Some(c)) if r.nvars() == 3 => (a, c),
        _ => return Err(bad("P must live in k[t,x,y]")),
    };
    let parts = p.coefficients_in(yi);
    if parts.len() != 2 {
        return Err(bad("P must have degree 1 in y"));
    }
    let c = &parts[1];
    if c.len() != 1 || c.support_vars().iter().any(|&i| i != ti) {
        return Err(bad("the coefficient of y must be a t^n"));
    }
    let n = c.valuation_in(ti).finite().unwrap();
    if n == 0 {
        return Err(bad("the coefficient of y must vanish at t = 0"));
    }
    let a = c.terms().next().unwrap().1.clone();
    let lambda = match degenerate_fibre_profile(p)? {
        FibreProfile::Shape { axis, lambda, .. } if axis == "x" => lambda,
        other => return Err(bad(&format!("P(0,x,y) is not mu x^m (x - lambda): {other:?}"))),
    };
    let s_part = &parts[0];
    let tx = ring(field, &["t", "x"]);
    let s_tx = s_part.to_ring(&tx)?;
    let f = s_tx.mul(&Poly::var(&tx, "x")?).add(&Poly::var(&tx, "t")?.pow(n).scale(&a));

    // Hensel lift in k[t] / (t^(n+1)).
    let tr = ring(field, &["t"]);
    let t1 = Poly::var(&tr, "t")?;
    let fx0 = f.derivative(1).eval_var(0, &field.zero()).evaluate(&[field.zero(), lambda.clone()]);
    let fx0_inv = fx0.inv().ok_or_else(|| bad("the root lambda is not simple"))?;
    let mut phi = Poly::constant(&tr, lambda);
    for k in 1..=n {
        let val = f.compose(&[t1.clone(), phi.clone()])?;
        let ck = val.coefficient(&Monomial::var(1, 0, k));
        phi = phi.sub(&t1.pow(k).scale(&ck.mul(&fx0_inv)));
    }

    let st = ring(field, &["s", "t"]);
    let s = Poly::var(&st, "s")?;
    let t = Poly::var(&st, "t")?;
    let x = phi.to_ring(&st)?.add(&t.pow(n + 1).mul(&s));
    let s_val = s_tx.compose(&[t.clone(), x.clone()])?;
    let a_inv = a.inv().unwrap();
    let tn = t.pow(n);
    let y = s_val
        .neg()
        .scale(&a_inv)
        .exact_div(&tn)
        .filter(|q| q.mul(&tn) == s_val.neg().scale(&a_inv))
        .ok_or_else(|| EmbeddingError::DerivationFailed { residual: format!("t^{n} does not divide {s_val}") })?;
    let num = x.mul(&y).sub(&Poly::one(&st));
    let u = num
        .exact_div(&t)
        .filter(|q| q.mul(&t) == num)
        .ok_or_else(|| EmbeddingError::DerivationFailed { residual: format!("t does not divide {num}") })?;
    Ok([t, u, x, y])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn txy() -> crate::poly::RingRef {
        ring(&Field::Rationals, &["t", "x", "y"])
    }

    #[test]
    fn profile_of_e() {
        let r = txy();
        let p = Poly::parse(&r, "t*y - x*(x - 1)").unwrap();
        let f = Field::Rationals;
        assert_eq!(
            degenerate_fibre_profile(&p).unwrap(),
            FibreProfile::Shape { axis: "x".into(), m: 1, mu: f.from_i64(-1), lambda: f.one() }
        );
        let q = Poly::parse(&r, "t*y - (x^2 + 1)").unwrap();
        assert!(matches!(degenerate_fibre_profile(&q).unwrap(), FibreProfile::NotOfRequiredForm(_)));
    }

    #[test]
    fn triviality_witness() {
        let r = txy();
        let p = Poly::parse(&r, "t^2*y - x*(x + 1 - t^2)").unwrap();
        assert!(matches!(fibre_triviality_check(&p), FibreTriviality::AllFibresOffZeroAreLines { n: 2, .. }));
        let q = Poly::parse(&r, "x*y - 1").unwrap();
        assert!(matches!(fibre_triviality_check(&q), FibreTriviality::Inconclusive(_)));
    }

    #[test]
    fn chart_for_higher_n() {
        let r = txy();
        let p = Poly::parse(&r, "t^3*y + 2*x^2*(x - 1) + t*(x^2 + t*x)").unwrap();
        let [t, u, x, y] = fibred_chart(&p).unwrap();
        let st = t.ring().clone();
        let det = x.mul(&y).sub(&t.mul(&u));
        assert!(det.is_one());
        let on = p.to_ring(&ring(&Field::Rationals, &["t", "x", "y"])).unwrap().compose(&[t, x, y]).unwrap();
        assert!(on.is_zero());
        assert_eq!(st.vars(), &["s".to_string(), "t".to_string()]);
    }
}
