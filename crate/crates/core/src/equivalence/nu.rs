//! The functional equation `p(t) = lambda q(lambda t + mu)` and the induced
//! automorphism of `Q2`.

use serde::Serialize;

use super::{EquivalenceError, EquivalenceVerdict, Obstruction, Outcome, Scalar, Witness};
use crate::embeddings::{construct, q2_relation, q2_ring, ring, CheckedIdentity, Family};
use crate::field::{Field, FieldValue};
use crate::poly::{Monomial, Poly, RingRef};

/// Largest prime for which the `F_p` search runs.
pub const NU_EXHAUSTIVE_LIMIT: u32 = 100_000;

const LOW_DEGREE_FLAG: &str = "rigidity theorem inapplicable (requires degree >= 3)";

/// Move a univariate polynomial into `k[t]`.
fn in_t(p: &Poly) -> Result<(RingRef, Poly), EquivalenceError> {
    if p.ring().nvars() != 1 {
        return Err(EquivalenceError::InvalidInput(format!("{p} must be univariate")));
    }
    let tr = ring(p.field(), &["t"]);
    let moved = p.compose(&[Poly::var_at(&tr, 0)])?;
    Ok((tr, moved))
}

fn coeff(p: &Poly, k: u32) -> FieldValue {
    p.coefficient(&Monomial::var(1, 0, k))
}

/// `lambda q(lambda t + mu)`
fn scale_shift(q: &Poly, lambda: &FieldValue, mu: &FieldValue) -> Poly {
    let r = q.ring();
    let arg = Poly::var_at(r, 0).scale(lambda).add(&Poly::constant(r, mu.clone()));
    q.compose(&[arg]).expect("univariate").scale(lambda)
}

fn check_field(field: &Field) -> Result<(), EquivalenceError> {
    match field {
        Field::Fractions { .. } => Err(EquivalenceError::UnsupportedField(field.to_string())),
        _ => Ok(()),
    }
}

/// Decide whether `lambda in k^*`, `mu in k` exist with
/// `p(t) = lambda q(lambda t + mu)`; an equivalent verdict lists every
/// solution.
pub fn nu_equiv(p: &Poly, q: &Poly) -> Result<EquivalenceVerdict, EquivalenceError> {
    p.check_ring(q)?;
    let field = p.field().clone();
    check_field(&field)?;
    let (_, p) = in_t(p)?;
    let (_, q) = in_t(q)?;
    let sc = |v: FieldValue| Scalar::new(&field, v);

    if p.is_zero() || q.is_zero() {
        if p.is_zero() && q.is_zero() {
            let mut v = EquivalenceVerdict::of(Outcome::Equivalent(Witness::ScaleShift {
                solutions: vec![(sc(field.one()), sc(field.zero()))],
            }));
            v.flags.push("both polynomials vanish: every (lambda, mu) is a solution".into());
            return Ok(v);
        }
        let deg = |x: &Poly| x.total_degree().finite().map_or(-1, |d| d as i64);
        return Ok(EquivalenceVerdict::of(Outcome::NotEquivalent(Obstruction::DegreeMismatch {
            left: deg(&p),
            right: deg(&q),
        })));
    }
    let d = p.total_degree().finite().unwrap();
    let dq = q.total_degree().finite().unwrap();
    if d != dq {
        return Ok(EquivalenceVerdict::of(Outcome::NotEquivalent(Obstruction::DegreeMismatch {
            left: d as i64,
            right: dq as i64,
        })));
    }

    let ratio = coeff(&p, d).checked_div(&coeff(&q, d)).unwrap();
    let mut flags = Vec::new();
    if d < 3 {
        flags.push(LOW_DEGREE_FLAG.to_string());
    }
    if let Field::Prime(m) = field {
        if m > NU_EXHAUSTIVE_LIMIT {
            return Ok(EquivalenceVerdict {
                outcome: Outcome::Inconclusive(format!("F_{m} exceeds the search limit F_{NU_EXHAUSTIVE_LIMIT}")),
                flags,
            });
        }
    }
    let lambdas = field.nth_roots(&ratio, d + 1).expect("Q and F_p extract roots");
    let lambdas: Vec<FieldValue> = lambdas.into_iter().filter(|l| !l.is_zero()).collect();
    if lambdas.is_empty() {
        return Ok(EquivalenceVerdict {
            outcome: Outcome::NotEquivalent(Obstruction::NoScaleCandidate {
                ratio: field.format_value(&ratio),
                exponent: d + 1,
            }),
            flags,
        });
    }

    let mut solutions = Vec::new();
    let mut tried = Vec::new();
    let mut pairs_tried = 0u64;
    for lambda in &lambdas {
        let mus: Vec<FieldValue> = match &field {
            // Every mu, for each admissible lambda.
            Field::Prime(_) => field.elements().unwrap(),
            // The t^(d-1) coefficient is lambda^d (d q_d mu + q_(d-1)); in
            // characteristic zero d q_d is nonzero, so mu is determined.
            _ if d == 0 => vec![field.zero()],
            _ => {
                let dqd = field.from_i64(d as i64).mul(&coeff(&q, d));
                let target = coeff(&p, d - 1).checked_div(&lambda.pow(d as u64)).unwrap();
                vec![target.sub(&coeff(&q, d - 1)).checked_div(&dqd).unwrap()]
            }
        };
        for mu in mus {
            pairs_tried += 1;
            if scale_shift(&q, lambda, &mu) == p {
                solutions.push((sc(lambda.clone()), sc(mu.clone())));
            } else if !field.is_finite() {
                tried.push((field.format_value(lambda), field.format_value(&mu)));
            }
        }
    }
    if d == 0 && !solutions.is_empty() {
        flags.push("constant polynomials: mu is arbitrary, 0 is reported".into());
    }
    let outcome = if !solutions.is_empty() {
        Outcome::Equivalent(Witness::ScaleShift { solutions })
    } else if field.is_finite() {
        Outcome::NotEquivalent(Obstruction::SearchExhausted { pairs_tried })
    } else {
        Outcome::NotEquivalent(Obstruction::CandidatesExhausted { candidates: tried })
    };
    Ok(EquivalenceVerdict { outcome, flags })
}

/// `alpha` on `Q2` and `beta` on the line with `alpha o nu_p = nu_q o beta`.
#[derive(Debug, Clone, Serialize)]
pub struct NuExtension {
    /// Images of `x, y, z`.
    pub alpha: Vec<String>,
    pub beta: String,
    /// `alpha^*(xy - z(z+1)) = relation_scale (xy - z(z+1))`
    pub relation_scale: Scalar,
    pub checks: Vec<CheckedIdentity>,
    #[serde(skip)]
    pub alpha_polys: [Poly; 3],
    #[serde(skip)]
    pub beta_poly: Poly,
}

impl NuExtension {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// `alpha = (lambda x + (mu^2/lambda) y + 2 mu z + mu, y/lambda, z + (mu/lambda) y)`,
/// `beta = lambda t + mu`, both checked.
pub fn nu_extension(p: &Poly, q: &Poly, lambda: &FieldValue, mu: &FieldValue) -> Result<NuExtension, EquivalenceError> {
    p.check_ring(q)?;
    let field = p.field().clone();
    check_field(&field)?;
    let (tr, p) = in_t(p)?;
    let (_, q) = in_t(q)?;
    let Some(linv) = lambda.inv() else {
        return Err(EquivalenceError::WitnessInvalid("lambda must be nonzero".into()));
    };
    let rhs = scale_shift(&q, lambda, mu);
    if rhs != p {
        return Err(EquivalenceError::WitnessInvalid(format!("p - lambda q(lambda t + mu) = {}", p.sub(&rhs))));
    }
    let q2 = q2_ring(&field);
    let v = |n: &str| Poly::var(&q2, n).unwrap();
    let (x, y, z) = (v("x"), v("y"), v("z"));
    let two = field.from_i64(2);
    let alpha = [
        x.scale(lambda)
            .add(&y.scale(&mu.mul(mu).mul(&linv)))
            .add(&z.scale(&two.mul(mu)))
            .add(&Poly::constant(&q2, mu.clone())),
        y.scale(&linv),
        z.add(&y.scale(&mu.mul(&linv))),
    ];
    let beta = Poly::var_at(&tr, 0).scale(lambda).add(&Poly::constant(&tr, mu.clone()));

    let rel = q2_relation(&q2);
    let pulled = rel.compose(&alpha)?;
    let xy = Monomial::new(vec![1, 1, 0]);
    let scale = pulled.coefficient(&xy).checked_div(&rel.coefficient(&xy)).unwrap();
    let mut checks = vec![CheckedIdentity::new("alpha preserves xy - z(z+1) up to a unit", &pulled.sub(&rel.scale(&scale)))];
    if scale.is_zero() {
        checks.push(CheckedIdentity::new("relation scale is a unit", &rel));
    }
    let nu_p = construct(&field, Family::NuP { p: p.clone() })?;
    let nu_q = construct(&field, Family::NuP { p: q.clone() })?;
    let left = nu_p.transform(&alpha)?;
    for (i, name) in ["x", "y", "z"].iter().enumerate() {
        let right = nu_q.components[i].compose(std::slice::from_ref(&beta))?;
        checks.push(CheckedIdentity::new(format!("alpha o nu_p = nu_q o beta in {name}"), &left[i].sub(&right)));
    }
    let out = NuExtension {
        alpha: alpha.iter().map(|a| a.to_string()).collect(),
        beta: beta.to_string(),
        relation_scale: Scalar::new(&field, scale),
        checks,
        alpha_polys: alpha,
        beta_poly: beta,
    };
    if !out.verified() {
        return Err(EquivalenceError::VerificationFailed(format!("{:?}", out.checks)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_poly(f: &Field, s: &str) -> Poly {
        Poly::parse(&ring(f, &["t"]), s).unwrap()
    }

    fn solutions(v: &EquivalenceVerdict) -> Vec<(String, String)> {
        match &v.outcome {
            Outcome::Equivalent(Witness::ScaleShift { solutions }) => {
                solutions.iter().map(|(a, b)| (a.text.clone(), b.text.clone())).collect()
            }
            _ => Vec::new(),
        }
    }

    #[test]
    fn examples_over_q() {
        let f = Field::Rationals;
        // lambda = -1 also works for an odd monomial
        let v = nu_equiv(&t_poly(&f, "t^3"), &t_poly(&f, "t^3")).unwrap();
        assert_eq!(solutions(&v), vec![("1".into(), "0".into()), ("-1".into(), "0".into())]);
        let v = nu_equiv(&t_poly(&f, "t*(t+1)^2"), &t_poly(&f, "t^2*(t+1)^3")).unwrap();
        assert!(matches!(v.outcome, Outcome::NotEquivalent(Obstruction::DegreeMismatch { left: 3, right: 5 })));
        let v = nu_equiv(&t_poly(&f, "t^3"), &t_poly(&f, "-t^3")).unwrap();
        assert!(matches!(v.outcome, Outcome::NotEquivalent(Obstruction::NoScaleCandidate { exponent: 4, .. })));
        let p = t_poly(&f, "t*(t+1)^2*(t+2)^3");
        assert_eq!(solutions(&nu_equiv(&p, &p).unwrap()), vec![("1".into(), "0".into())]);
        let v = nu_equiv(&t_poly(&f, "t^2"), &t_poly(&f, "t^2")).unwrap();
        assert!(v.flags.iter().any(|x| x.contains("degree >= 3")));
    }

    #[test]
    fn extension_examples() {
        let f = Field::Rationals;
        let q = t_poly(&f, "t^3");
        let p = t_poly(&f, "16*t^3");
        let e = nu_extension(&p, &q, &f.from_i64(2), &f.zero()).unwrap();
        assert_eq!(e.alpha, vec!["2*x", "1/2*y", "z"]);
        let e = nu_extension(&q, &q, &f.one(), &f.zero()).unwrap();
        assert_eq!(e.alpha, vec!["x", "y", "z"]);
        assert_eq!(e.beta, "t");
        assert!(matches!(nu_extension(&q, &q, &f.one(), &f.one()), Err(EquivalenceError::WitnessInvalid(_))));
    }

    #[test]
    fn shifted_witness_extends() {
        let f = Field::Rationals;
        let q = t_poly(&f, "t^3 + t + 2");
        let lambda = f.from_i64(-3);
        let mu = f.from_i64(5);
        let p = scale_shift(&q, &lambda, &mu);
        let v = nu_equiv(&p, &q).unwrap();
        assert!(solutions(&v).contains(&("-3".into(), "5".into())));
        assert!(nu_extension(&p, &q, &lambda, &mu).unwrap().verified());
    }

    #[test]
    fn rational_functions_are_unsupported() {
        let kt = Field::fractions(Field::Rationals, "T").unwrap();
        let p = t_poly(&kt, "t^3");
        assert!(matches!(nu_equiv(&p, &p), Err(EquivalenceError::UnsupportedField(_))));
    }
}
