//! Lifting plane automorphisms of Jacobian `±1` to `SL2` through
//! `nu(a, b) = (a 1; ab - 1 b)`.

use serde::Serialize;

use super::word::{tame_decompose_checked, AutomorphismWord, Generator};
use super::{EquivalenceError, Scalar};
use crate::embeddings::{sl2_ring, CheckedIdentity};
use crate::field::Field;
use crate::ideals::Sl2Quotient;
use crate::poly::{jacobian_det, Poly, RingRef};

/// An automorphism of `SL2` given by the images of `t, u, x, y`, with the
/// images of its inverse and the checks run on it.
#[derive(Debug, Clone, Serialize)]
pub struct Sl2AutoSpec {
    pub images: Vec<String>,
    pub inverse: Vec<String>,
    pub checks: Vec<CheckedIdentity>,
    #[serde(skip)]
    pub image_polys: [Poly; 4],
    #[serde(skip)]
    pub inverse_polys: [Poly; 4],
}

impl Sl2AutoSpec {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn generator_lift(g: &Generator, r: &RingRef) -> [Poly; 4] {
    let v = |i| Poly::var_at(r, i);
    let (t, u, x, y) = (v(0), v(1), v(2), v(3));
    match g {
        // (x t; u y) -> (y t; u x)
        Generator::Swap => [t, u, y, x],
        // left multiplication by (1 0; p(x) 1)
        Generator::Triangular(p) => {
            let px = p.compose(std::slice::from_ref(&x)).expect("univariate parameter");
            [t.clone(), px.mul(&x).add(&u), x, px.mul(&t).add(&y)]
        }
        _ => unreachable!("words are rewritten into Swap and Triangular factors before lifting"),
    }
}

fn compose_lifts(word: &AutomorphismWord, r: &RingRef) -> [Poly; 4] {
    let mut acc: [Poly; 4] = std::array::from_fn(|i| Poly::var_at(r, i));
    for g in &word.factors {
        let inner = generator_lift(g, r);
        acc = std::array::from_fn(|i| acc[i].compose(&inner).unwrap());
    }
    acc
}

/// Lift a word whose factors all have determinant `±1`. The relation and
/// the inverse are checked modulo `xy - tu - 1`; no check against a plane
/// map is made here.
pub fn lift_word(word: &AutomorphismWord) -> Result<Sl2AutoSpec, EquivalenceError> {
    let elementary = word.elementary()?;
    let r = sl2_ring(&word.field);
    let images = compose_lifts(&elementary, &r);
    let inverse = compose_lifts(&elementary.inverse(), &r);
    let quotient = Sl2Quotient::new(&r)?;
    let rel = quotient.relation();
    let mut checks = vec![CheckedIdentity::new(
        "images satisfy xy - tu - 1 modulo the SL2 ideal",
        &quotient.normal_form(&rel.compose(&images)?),
    )];
    for (i, name) in r.vars().iter().enumerate() {
        let round = inverse[i].compose(&images)?;
        checks.push(CheckedIdentity::new(
            format!("inverse recovers {name} modulo the SL2 ideal"),
            &quotient.normal_form(&round.sub(&Poly::var_at(&r, i))),
        ));
    }
    Ok(Sl2AutoSpec {
        images: images.iter().map(|p| p.to_string()).collect(),
        inverse: inverse.iter().map(|p| p.to_string()).collect(),
        checks,
        image_polys: images,
        inverse_polys: inverse,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome")]
pub enum ExtensionDecision {
    Extends {
        word: AutomorphismWord,
        #[serde(rename = "lift")]
        lift: Box<Sl2AutoSpec>,
    },
    DoesNotExtend { jacobian: Scalar },
    NotAnAutomorphism { reason: String },
}

/// `nu(a, b) = (a 1; ab - 1 b)` in the order `t, u, x, y`.
fn nu_components(a: &Poly, b: &Poly) -> [Poly; 4] {
    let one = Poly::one(a.ring());
    [one.clone(), a.mul(b).sub(&one), a.clone(), b.clone()]
}

/// Decide whether the plane map `(f, g)` extends to `SL2` through `nu`.
pub fn jac_extension_decide(f: &Poly, g: &Poly) -> Result<ExtensionDecision, EquivalenceError> {
    f.check_ring(g)?;
    let r = f.ring().clone();
    if r.nvars() != 2 {
        return Err(EquivalenceError::InvalidInput("maps of the plane need a ring in two variables".into()));
    }
    let field: Field = r.field().clone();
    if let Field::Fractions { .. } = field {
        return Err(EquivalenceError::UnsupportedField(field.to_string()));
    }
    let jac = jacobian_det(f, g, &r.vars()[0], &r.vars()[1])?;
    let j = match jac.constant_value() {
        Some(c) if !c.is_zero() => c,
        _ => {
            return Ok(ExtensionDecision::NotAnAutomorphism {
                reason: format!("the Jacobian determinant {jac} is not a nonzero constant"),
            })
        }
    };
    if !j.is_one() && j != field.from_i64(-1) {
        return Ok(ExtensionDecision::DoesNotExtend { jacobian: Scalar::new(&field, j) });
    }
    let dec = tame_decompose_checked(f, g)?;
    let mut lift = lift_word(&dec.word)?;
    let s = Poly::var_at(&r, 0);
    let t = Poly::var_at(&r, 1);
    let via_lift: Vec<Poly> =
        lift.image_polys.iter().map(|im| im.compose(&nu_components(&s, &t))).collect::<Result<_, _>>()?;
    let via_plane = nu_components(f, g);
    for (i, name) in ["t", "u", "x", "y"].iter().enumerate() {
        lift.checks.push(CheckedIdentity::new(
            format!("lift o nu = nu o (f, g) in {name}"),
            &via_lift[i].sub(&via_plane[i]),
        ));
    }
    if !lift.verified() {
        let bad: Vec<_> = lift.checks.iter().filter(|c| !c.holds).map(|c| c.label.clone()).collect();
        return Err(EquivalenceError::VerificationFailed(bad.join("; ")));
    }
    Ok(ExtensionDecision::Extends { word: dec.word, lift: Box::new(lift) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn plane(f: &Field) -> RingRef {
        Ring::new(f.clone(), &["x", "y"]).unwrap()
    }

    fn decide(f: &Field, a: &str, b: &str) -> ExtensionDecision {
        let r = plane(f);
        jac_extension_decide(&Poly::parse(&r, a).unwrap(), &Poly::parse(&r, b).unwrap()).unwrap()
    }

    #[test]
    fn swap_lifts_to_diagonal_swap() {
        let ExtensionDecision::Extends { lift, .. } = decide(&Field::Rationals, "y", "x") else { panic!() };
        assert_eq!(lift.images, vec!["t", "u", "y", "x"]);
    }

    #[test]
    fn triangular_lifts_to_unipotent() {
        let ExtensionDecision::Extends { lift, .. } = decide(&Field::Rationals, "x", "y + x^2") else { panic!() };
        assert_eq!(lift.images, vec!["t", "x^3 + u", "x", "t*x^2 + y"]);
    }

    #[test]
    fn scaling_and_diagonal() {
        let f = Field::Rationals;
        assert!(matches!(decide(&f, "2*x", "y"), ExtensionDecision::DoesNotExtend { jacobian } if jacobian.text == "2"));
        let ExtensionDecision::Extends { lift, .. } = decide(&f, "2*x", "y/2") else { panic!() };
        assert!(lift.verified());
        assert!(matches!(decide(&f, "x^2", "y"), ExtensionDecision::NotAnAutomorphism { .. }));
    }

    #[test]
    fn composite_over_f3() {
        let f = Field::prime(3).unwrap();
        let ExtensionDecision::Extends { lift, word } = decide(&f, "y + 1", "2*x + (y + 1)^3") else { panic!() };
        assert!(lift.verified());
        assert!(!word.is_empty());
    }
}
