//! Embedding families into `Q2 = {xy = z(z+1)}`, `SL2` and affine spaces,
//! with construction-time verification and closedness certificates.

mod certificate;
mod charp;
mod fibre;
mod q2;
mod shastri;
mod surface_e;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, FieldValue};
use crate::ideals::{IdealError, Sl2Quotient};
use crate::poly::{AlgebraError, Poly, Ring, RingRef};

pub use certificate::{certify_closed, builtin_certificate, Certificate, ChainStep, ClosednessCertificate};
pub use charp::{formof_a1_witness, not_var_kt_maps, FormOfA1Witness, NotVarKtMaps};
pub use fibre::{
    degenerate_fibre_profile, fibre_triviality_check, fibred_chart, FibreProfile, FibreTriviality, ProfileFailure,
};
pub use q2::{nu_hat_check, q2_chart_isomorphism_check};
pub use shastri::{shastri_gammas, shastri_identities, shastri_left_inverse_t};
pub use surface_e::{final_a4_left_inverse, final_a4_left_inverse_for, surface_e_chain, FinalA4Inverse};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("{family}: parameter constraint violated: {constraint}")]
    ParameterConstraintViolated { family: &'static str, constraint: String },
    #[error("ambient is not a quadric")]
    NotAQuadricAmbient,
    #[error("identity {identity} fails with residual {residual}")]
    IdentityFails { identity: String, residual: String },
    #[error("witness fails for {identity}: residual {residual}")]
    WitnessFails { identity: String, residual: String },
    #[error("derivation failed: residual {residual}")]
    DerivationFailed { residual: String },
    #[error("not of the required form: {0}")]
    NotOfRequiredForm(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// A verified polynomial identity, reported with its residual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckedIdentity {
    pub label: String,
    pub residual: String,
    pub holds: bool,
}

impl CheckedIdentity {
    pub fn new(label: impl Into<String>, residual: &Poly) -> CheckedIdentity {
        CheckedIdentity { label: label.into(), residual: residual.to_string(), holds: residual.is_zero() }
    }

    pub fn require(self) -> Result<CheckedIdentity, EmbeddingError> {
        if self.holds {
            Ok(self)
        } else {
            Err(EmbeddingError::IdentityFails { identity: self.label, residual: self.residual })
        }
    }
}

pub fn ring(field: &Field, vars: &[&str]) -> RingRef {
    Ring::new(field.clone(), vars).expect("fixed variable names are valid")
}

/// `k[x,y,z]`, the ambient ring of `Q2`.
pub fn q2_ring(field: &Field) -> RingRef {
    ring(field, &["x", "y", "z"])
}

/// `k[t,u,x,y]`, the ambient ring of `SL2` with matrix layout `(x t; u y)`.
pub fn sl2_ring(field: &Field) -> RingRef {
    ring(field, &["t", "u", "x", "y"])
}

pub fn q2_relation(r: &RingRef) -> Poly {
    Poly::parse(r, "x*y - z*(z + 1)").expect("ring has x, y, z")
}

pub fn sl2_relation(r: &RingRef) -> Poly {
    Poly::parse(r, "x*y - t*u - 1").expect("ring has t, u, x, y")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ambient {
    Q2,
    Sl2,
    Affine(usize),
}

impl Ambient {
    pub fn relation(&self, target: &RingRef) -> Option<Poly> {
        match self {
            Ambient::Q2 => Some(q2_relation(target)),
            Ambient::Sl2 => Some(sl2_relation(target)),
            Ambient::Affine(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairMember {
    /// `t^2 y - x(x+1)`
    P,
    /// `t^2 y - x(x+1-t^2)`
    Q,
}

/// Embedding families together with their parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    NuP { p: Poly },
    RhoLambda { lambda: FieldValue },
    Pr { r: Poly },
    Fibred { n: u32, m: u32, mu: FieldValue, q: Poly },
    NonEquivPair { which: PairMember },
    CharPLine { p: u32, q: u32, a: FieldValue, b: FieldValue },
    CharPHypersurface { p: u32, q: u32, a: FieldValue, n: usize },
    NotVarKt { p: u32, q: u32 },
    SurfaceE,
    ShastriA3,
    ShastriSl2,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::NuP { .. } => "nu-p",
            Family::RhoLambda { .. } => "rho-lambda",
            Family::Pr { .. } => "pr",
            Family::Fibred { .. } => "fibred",
            Family::NonEquivPair { .. } => "nonequiv-pair",
            Family::CharPLine { .. } => "charp-line",
            Family::CharPHypersurface { .. } => "charp-hypersurface",
            Family::NotVarKt { .. } => "not-var-kt",
            Family::SurfaceE => "surface-e",
            Family::ShastriA3 => "shastri-a3",
            Family::ShastriSl2 => "shastri-sl2",
        }
    }

    pub const TAGS: [&'static str; 11] = [
        "nu-p",
        "rho-lambda",
        "pr",
        "fibred",
        "nonequiv-pair",
        "charp-line",
        "charp-hypersurface",
        "not-var-kt",
        "surface-e",
        "shastri-a3",
        "shastri-sl2",
    ];
}

/// A morphism from affine space given by its components, landing in a
/// quadric or an affine space, optionally inside a hypersurface.
#[derive(Debug, Clone)]
pub struct EmbeddingSpec {
    pub family: Family,
    pub source: RingRef,
    pub target: RingRef,
    /// One component per target variable, in target ring order.
    pub components: Vec<Poly>,
    pub ambient: Ambient,
    /// Equation of the image inside the ambient, when known; it lives in
    /// `hypersurface_ring`, whose variables are a subset of the target's.
    pub hypersurface: Option<Poly>,
}

impl fmt::Display for EmbeddingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .target
            .vars()
            .iter()
            .zip(&self.components)
            .map(|(v, c)| format!("{v} = {c}"))
            .collect();
        write!(f, "{}: ({})", self.family.tag(), parts.join(", "))
    }
}

impl EmbeddingSpec {
    pub fn field(&self) -> &Field {
        self.source.field()
    }

    pub fn component(&self, var: &str) -> Option<&Poly> {
        self.target.index_of(var).map(|i| &self.components[i])
    }

    /// Matrix entries `(x, t, u, y)` of an `SL2`-valued embedding.
    pub fn matrix(&self) -> Option<[Poly; 4]> {
        if self.ambient != Ambient::Sl2 {
            return None;
        }
        let g = |v| self.component(v).cloned().unwrap();
        Some([g("x"), g("t"), g("u"), g("y")])
    }

    /// Substitute the components into the ambient relation; zero means the
    /// image lies on the quadric.
    pub fn verify_on_quadric(&self) -> Result<CheckedIdentity, EmbeddingError> {
        let rel = self.ambient.relation(&self.target).ok_or(EmbeddingError::NotAQuadricAmbient)?;
        let residual = rel.compose(&self.components)?;
        Ok(CheckedIdentity::new(format!("{} lies on {rel} = 0", self.family.tag()), &residual))
    }

    /// Substitute the components into the image equation.
    pub fn verify_hypersurface(&self) -> Result<Option<CheckedIdentity>, EmbeddingError> {
        let Some(h) = &self.hypersurface else { return Ok(None) };
        let images: Vec<Poly> = h
            .ring()
            .vars()
            .iter()
            .map(|v| self.component(v).cloned().ok_or_else(|| AlgebraError::MissingImage(v.clone())))
            .collect::<Result<_, _>>()?;
        let residual = h.compose(&images)?;
        Ok(Some(CheckedIdentity::new(format!("image satisfies {h} = 0"), &residual)))
    }

    /// Apply a map of the target given by images of the target variables.
    pub fn transform(&self, images: &[Poly]) -> Result<Vec<Poly>, EmbeddingError> {
        Ok(images.iter().map(|im| im.compose(&self.components)).collect::<Result<_, _>>()?)
    }

    /// `SL2` relation check through the quotient normal form.
    pub fn sl2_residual(&self) -> Option<Poly> {
        let q = Sl2Quotient::new(&self.target).ok()?;
        q.relation().compose(&self.components).ok()
    }
}

fn constraint(family: &'static str, c: impl Into<String>) -> EmbeddingError {
    EmbeddingError::ParameterConstraintViolated { family, constraint: c.into() }
}

fn param(p: &Poly, target: &RingRef, family: &'static str, what: &str) -> Result<Poly, EmbeddingError> {
    if p.field() != target.field() {
        return Err(constraint(family, format!("{what} must have coefficients in {}", target.field())));
    }
    p.to_ring(target).map_err(|_| {
        constraint(family, format!("{what} must be a polynomial in {}", target.vars().join(", ")))
    })
}

fn require_char(field: &Field, p: u32, family: &'static str) -> Result<(), EmbeddingError> {
    if field.characteristic() != p {
        return Err(constraint(family, format!("the field must have characteristic p = {p}, not {}", field.characteristic())));
    }
    Ok(())
}

fn require_q(p: u32, q: u32, family: &'static str) -> Result<(), EmbeddingError> {
    if q < 2 || q.is_multiple_of(p) {
        return Err(constraint(family, format!("q = {q} must be at least 2 and not a multiple of p = {p}")));
    }
    Ok(())
}

/// Build and verify the embedding of `family` over `field`.
pub fn construct(field: &Field, family: Family) -> Result<EmbeddingSpec, EmbeddingError> {
    let spec = build(field, family)?;
    if spec.ambient != Ambient::Affine(spec.components.len()) {
        spec.verify_on_quadric()?.require()?;
    }
    if let Some(c) = spec.verify_hypersurface()? {
        c.require()?;
    }
    Ok(spec)
}

fn build(field: &Field, family: Family) -> Result<EmbeddingSpec, EmbeddingError> {
    let st = || ring(field, &["s", "t"]);
    let txy = || ring(field, &["t", "x", "y"]);
    let params = family.clone();
    match &params {
        Family::NuP { p } => {
            let src = ring(field, &["t"]);
            let p = param(p, &src, "nu-p", "p")?;
            let t = Poly::var(&src, "t")?;
            let tp = t.mul(&p);
            let comps = vec![t.mul(&Poly::one(&src).add(&tp)), p, tp];
            Ok(EmbeddingSpec {
                family,
                source: src,
                target: q2_ring(field),
                components: comps,
                ambient: Ambient::Q2,
                hypersurface: None,
            })
        }
        Family::RhoLambda { lambda } => {
            if lambda.is_zero() || !field.contains(lambda) {
                return Err(constraint("rho-lambda", "lambda must be a nonzero element of the field"));
            }
            let src = st();
            let s = Poly::var(&src, "s")?;
            let t = Poly::var(&src, "t")?;
            let ls = s.scale(lambda);
            let comps = vec![t.clone(), ls.clone(), Poly::one(&src), Poly::one(&src).add(&ls.mul(&t))];
            Ok(EmbeddingSpec { family, source: src, target: sl2_ring(field), components: comps, ambient: Ambient::Sl2, hypersurface: None })
        }
        Family::Pr { r } => {
            let tr = ring(field, &["t"]);
            let r = param(r, &tr, "pr", "r")?;
            let h = txy();
            let r = r.to_ring(&h)?;
            let s_r = Poly::parse(&h, "x - t")?.mul(&Poly::parse(&h, "x - 1")?.sub(&Poly::parse(&h, "t^2")?.mul(&r)));
            fibred_family(field, family, 1, s_r.neg())
        }
        Family::Fibred { n, m, mu, q } => {
            if *n == 0 {
                return Err(constraint("fibred", "n must be at least 1"));
            }
            if mu.is_zero() || !field.contains(mu) {
                return Err(constraint("fibred", "mu must be a nonzero element of the field"));
            }
            let tx = ring(field, &["t", "x"]);
            let q = param(q, &tx, "fibred", "q")?;
            let h = txy();
            let x = Poly::var(&h, "x")?;
            let s = x.pow(*m).mul(&x.sub(&Poly::one(&h))).scale(mu).add(&Poly::var(&h, "t")?.mul(&q.to_ring(&h)?));
            fibred_family(field, family, *n, s)
        }
        Family::NonEquivPair { which } => {
            let h = txy();
            let s = match which {
                PairMember::P => Poly::parse(&h, "-x*(x + 1)")?,
                PairMember::Q => Poly::parse(&h, "-x*(x + 1 - t^2)")?,
            };
            fibred_family(field, family, 2, s)
        }
        Family::SurfaceE => {
            let src = st();
            let g = |e: &str| Poly::parse(&src, e);
            let xx = g("1 + t + t^2*s")?;
            let tt = g("t")?;
            let w = g("t + t^2*s")?;
            let t2 = g("t^2")?;
            let u = xx.mul(&xx).mul(&w).sub(&tt).exact_div(&t2).expect("exact by construction");
            let y = xx.mul(&w).exact_div(&tt).expect("exact by construction");
            let h = txy();
            Ok(EmbeddingSpec {
                family,
                source: src,
                target: sl2_ring(field),
                components: vec![tt, u, xx, y],
                ambient: Ambient::Sl2,
                hypersurface: Some(Poly::parse(&h, "t*y - x*(x - 1)")?),
            })
        }
        Family::CharPLine { p, q, a, b } => {
            require_char(field, *p, "charp-line")?;
            if q % p == 0 {
                return Err(constraint("charp-line", format!("q = {q} must not be a multiple of p = {p}")));
            }
            if b.is_zero() || !field.contains(b) || !field.contains(a) {
                return Err(constraint("charp-line", "b must be nonzero and a, b must lie in the field"));
            }
            let src = ring(field, &["u"]);
            let u = Poly::var(&src, "u")?;
            let x = u.pow(p * p);
            let y = u.pow(p * q).scale(a).add(&u).scale(&b.inv().unwrap());
            let tgt = ring(field, &["x", "y"]);
            let pp = (*p as u64) * (*p as u64);
            let eq = Poly::var(&tgt, "x")?
                .add(&Poly::var(&tgt, "x")?.pow(p * q).scale(&a.pow(pp)))
                .sub(&Poly::var(&tgt, "y")?.pow(p * p).scale(&b.pow(pp)));
            Ok(EmbeddingSpec { family, source: src, target: tgt, components: vec![x, y], ambient: Ambient::Affine(2), hypersurface: Some(eq) })
        }
        Family::CharPHypersurface { p, q, a, n } => {
            require_char(field, *p, "charp-hypersurface")?;
            require_q(*p, *q, "charp-hypersurface")?;
            if a.is_zero() || !field.contains(a) {
                return Err(constraint("charp-hypersurface", "a must be a nonzero element of the field"));
            }
            if *n == 0 {
                return Err(constraint("charp-hypersurface", "n must be at least 1"));
            }
            let sv: Vec<String> = (1..=*n).map(|i| format!("x{i}")).collect();
            let tv: Vec<String> = (1..=*n + 1).map(|i| format!("y{i}")).collect();
            let src = ring(field, &sv.iter().map(|s| s.as_str()).collect::<Vec<_>>());
            let tgt = ring(field, &tv.iter().map(|s| s.as_str()).collect::<Vec<_>>());
            let x1 = Poly::var_at(&src, 0);
            let mut comps = vec![x1.pow(p * p), x1.pow(p * q).scale(a).add(&x1)];
            comps.extend((1..*n).map(|i| Poly::var_at(&src, i)));
            let pp = (*p as u64) * (*p as u64);
            let (y1, y2) = (Poly::var_at(&tgt, 0), Poly::var_at(&tgt, 1));
            let eq = y1.add(&y1.pow(p * q).scale(&a.pow(pp))).sub(&y2.pow(p * p));
            Ok(EmbeddingSpec { family, source: src, target: tgt, components: comps, ambient: Ambient::Affine(n + 1), hypersurface: Some(eq) })
        }
        Family::NotVarKt { p, q } => {
            require_char(field, *p, "not-var-kt")?;
            require_q(*p, *q, "not-var-kt")?;
            let maps = not_var_kt_maps(field, *p, *q)?;
            Ok(EmbeddingSpec {
                family,
                source: maps.tau[0].ring().clone(),
                target: maps.p.ring().clone(),
                components: maps.tau.to_vec(),
                ambient: Ambient::Affine(3),
                hypersurface: Some(maps.p),
            })
        }
        Family::ShastriA3 => {
            let src = ring(field, &["t"]);
            let g = shastri_gammas(&src);
            Ok(EmbeddingSpec { family, source: src, target: ring(field, &["x", "y", "z"]), components: g.to_vec(), ambient: Ambient::Affine(3), hypersurface: None })
        }
        Family::ShastriSl2 => {
            if field.characteristic() == 2 {
                return Err(constraint("shastri-sl2", "requires characteristic different from 2"));
            }
            let src = ring(field, &["t"]);
            let g = |e: &str| Poly::parse(&src, e);
            let x = g("t^3 - 3*t")?;
            let t = g("t^4 - 4*t^2 - 1")?;
            let u = g("1 + t^2*(17*t^6 - 56*t^4 - 137*t^2 + 452)/16")?;
            let y = g("t*(17*t^8 - 73*t^6 - 149*t^4 + 609*t^2 + 172)/16")?;
            Ok(EmbeddingSpec { family, source: src, target: sl2_ring(field), components: vec![t, u, x, y], ambient: Ambient::Sl2, hypersurface: None })
        }
    }
}

/// Embedding with image `{t^n y + S(t,x) = 0}` in `SL2`, built by clearing
/// denominators on the chart `t != 0`.
fn fibred_family(field: &Field, family: Family, n: u32, s: Poly) -> Result<EmbeddingSpec, EmbeddingError> {
    let h = s.ring().clone();
    let t = Poly::var(&h, "t")?;
    let y = Poly::var(&h, "y")?;
    let p_eq = t.pow(n).mul(&y).add(&s);
    let comps = fibred_chart(&p_eq)?;
    Ok(EmbeddingSpec {
        family,
        source: comps[0].ring().clone(),
        target: sl2_ring(field),
        components: comps.to_vec(),
        ambient: Ambient::Sl2,
        hypersurface: Some(p_eq),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_p_lies_on_q2() {
        let f = Field::Rationals;
        let r = ring(&f, &["t"]);
        let p = Poly::parse(&r, "t^3 - 2*t + 5").unwrap();
        let spec = construct(&f, Family::NuP { p }).unwrap();
        assert!(spec.verify_on_quadric().unwrap().holds);
        assert_eq!(spec.components[1].to_string(), "t^3 - 2*t + 5");
    }

    #[test]
    fn charp_line_example() {
        let f = Field::prime(2).unwrap();
        let spec = construct(&f, Family::CharPLine { p: 2, q: 3, a: f.one(), b: f.one() }).unwrap();
        let shown: Vec<String> = spec.components.iter().map(|c| c.to_string()).collect();
        assert_eq!(shown, vec!["u^4", "u^6 + u"]);
        let bad = construct(&f, Family::CharPLine { p: 2, q: 4, a: f.one(), b: f.one() });
        assert!(matches!(bad, Err(EmbeddingError::ParameterConstraintViolated { .. })));
    }

    #[test]
    fn surface_e_matches_fibred_chart() {
        let f = Field::Rationals;
        let e = construct(&f, Family::SurfaceE).unwrap();
        let h = ring(&f, &["t", "x", "y"]);
        let p_eq = Poly::parse(&h, "t*y - x*(x - 1)").unwrap();
        let chart = fibred_chart(&p_eq).unwrap();
        assert_eq!(chart.to_vec(), e.components);
    }

    #[test]
    fn shastri_sl2_has_determinant_one() {
        let f = Field::Rationals;
        let spec = construct(&f, Family::ShastriSl2).unwrap();
        assert!(spec.verify_on_quadric().unwrap().holds);
        assert!(construct(&Field::prime(2).unwrap(), Family::ShastriSl2).is_err());
    }
}
