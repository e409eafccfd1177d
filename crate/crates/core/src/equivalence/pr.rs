//! Equivalence of the fibred surfaces `ty = (x - t)(x - 1 - t^2 r(t))`.

use serde::Serialize;

use super::{EquivalenceError, EquivalenceVerdict, Obstruction, Outcome, Scalar, Witness};
use crate::embeddings::ring;
use crate::field::FieldValue;
use crate::poly::{Poly, RingRef};

/// Which root of `S_s` the root `at` of `S_r(at, x)` is matched with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PrCase {
    /// `at` matches `mu (t - tau)`
    I,
    /// `at` matches `mu (1 + t^2 s - tau)`
    II,
}

/// `S_r(t, x) = (x - t)(x - 1 - t^2 r(t))` in `k[t, x]`.
fn s_poly(tx: &RingRef, r: &Poly) -> Poly {
    let t = Poly::var_at(tx, 0);
    let x = Poly::var_at(tx, 1);
    let r = r.compose(std::slice::from_ref(&t)).unwrap();
    x.sub(&t).mul(&x.sub(&Poly::one(tx)).sub(&t.pow(2).mul(&r)))
}

fn univariate_in_t(p: &Poly) -> Result<Poly, EquivalenceError> {
    if p.ring().nvars() != 1 {
        return Err(EquivalenceError::InvalidInput(format!("{p} must be univariate")));
    }
    let tr = ring(p.field(), &["t"]);
    Ok(p.compose(&[Poly::var_at(&tr, 0)])?)
}

/// Both sides are monic quadrics in `x`, so they agree iff their roots match
/// in one of two ways. The constant and linear coefficients of the second
/// root equation pin `mu` and `a`; `tau` then comes from the first. Each
/// candidate is confirmed by expanding
/// `S_r(a t, x) - mu^2 S_s(t, x/mu + tau)`.
fn case_candidate(case: PrCase, s: &Poly) -> (FieldValue, FieldValue, Poly) {
    let tr = s.ring();
    let f = tr.field();
    let t = Poly::var_at(tr, 0);
    let one = Poly::one(tr);
    let second_root = one.add(&t.pow(2).mul(s));
    match case {
        // 1 + a^2 t^2 r(at) = mu (1 + t^2 s - tau), tau = t (1 - a/mu):
        // constant term gives mu = 1, linear term gives a = mu.
        PrCase::I => {
            let mu = f.one();
            let a = mu.clone();
            let tau = t.scale(&f.one().sub(&a.checked_div(&mu).unwrap()));
            (a, mu, tau)
        }
        // 1 + a^2 t^2 r(at) = mu (t - tau), tau = 1 + t^2 s - a t / mu:
        // constant term gives mu = -1, linear term gives a = -mu.
        PrCase::II => {
            let mu = f.from_i64(-1);
            let a = mu.neg();
            let tau = second_root.sub(&t.scale(&a.checked_div(&mu).unwrap()));
            (a, mu, tau)
        }
    }
}

fn residual(r: &Poly, s: &Poly, a: &FieldValue, mu: &FieldValue, tau: &Poly) -> Poly {
    let f = r.field();
    let tx = ring(f, &["t", "x"]);
    let t = Poly::var_at(&tx, 0);
    let x = Poly::var_at(&tx, 1);
    let left = s_poly(&tx, r).compose(&[t.scale(a), x.clone()]).unwrap();
    let shifted = x.scale(&mu.inv().unwrap()).add(&tau.compose(std::slice::from_ref(&t)).unwrap());
    let right = s_poly(&tx, s).compose(&[t, shifted]).unwrap().scale(&mu.mul(mu));
    left.sub(&right)
}

/// Run the two-case analysis and check it against the test `r = s`.
pub fn pr_equiv(r: &Poly, s: &Poly) -> Result<EquivalenceVerdict, EquivalenceError> {
    r.check_ring(s)?;
    let r = univariate_in_t(r)?;
    let s = univariate_in_t(s)?;
    let field = r.field().clone();
    let mut residuals = Vec::new();
    let mut found = None;
    for case in [PrCase::I, PrCase::II] {
        let (a, mu, tau) = case_candidate(case, &s);
        let res = residual(&r, &s, &a, &mu, &tau);
        if res.is_zero() {
            found.get_or_insert((case, a, mu, tau));
        } else {
            residuals.push((case, res.to_string()));
        }
    }
    let syntactic = r == s;
    if found.is_some() != syntactic {
        return Err(EquivalenceError::VerificationFailed(format!(
            "case analysis and the test r = s disagree for r = {r}, s = {s}"
        )));
    }
    let outcome = match found {
        Some((case, a, mu, tau)) => Outcome::Equivalent(Witness::FibreMatch {
            case,
            a: Scalar::new(&field, a),
            mu: Scalar::new(&field, mu),
            tau: tau.to_string(),
        }),
        None => Outcome::NotEquivalent(Obstruction::CaseAnalysis { residuals }),
    };
    Ok(EquivalenceVerdict::of(outcome))
}
