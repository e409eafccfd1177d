//! Fibred normal forms `(1 + stp, t; s(p + q + stpq), 1 + stq)`, the
//! classification of embeddings `A2 -> SL2` of degree at most two, and the
//! coordinate criterion over `k(t)`.

use serde::Serialize;

use super::lift::lift_word;
use super::word::{tame_decompose_checked, Generator};
use super::{EquivalenceError, Scalar};
use crate::embeddings::{construct, ring, sl2_ring, Ambient, CheckedIdentity, EmbeddingSpec, Family};
use crate::field::{Field, FieldValue};
use crate::ideals::{ideal_membership, IdealBasis};
use crate::poly::{jacobian_det, Monomial, Poly, RingRef};

/// An automorphism of `SL2`, as images of `t, u, x, y`.
#[derive(Debug, Clone, Serialize)]
pub struct Sl2Auto {
    pub label: String,
    pub images: Vec<String>,
    #[serde(skip)]
    pub polys: [Poly; 4],
}

impl Sl2Auto {
    fn new(label: impl Into<String>, polys: [Poly; 4]) -> Sl2Auto {
        Sl2Auto { label: label.into(), images: polys.iter().map(|p| p.to_string()).collect(), polys }
    }

    fn from_strs(r: &RingRef, label: &str, images: [&str; 4]) -> Sl2Auto {
        Sl2Auto::new(label, images.map(|s| Poly::parse(r, s).expect("fixed image")))
    }

    /// `self o rho` for an embedding given by components `t, u, x, y`.
    pub fn apply(&self, comps: &[Poly; 4]) -> [Poly; 4] {
        std::array::from_fn(|i| self.polys[i].compose(comps).unwrap())
    }

    fn is_identity(&self) -> bool {
        self.polys.iter().enumerate().all(|(i, p)| *p == Poly::var_at(p.ring(), i))
    }
}

/// `(x t; u y) -> (u x; -y -t)`
fn h(r: &RingRef) -> Sl2Auto {
    Sl2Auto::from_strs(r, "(x t; u y) -> (u x; -y -t)", ["x", "-y", "u", "-t"])
}

/// `(x t; u y) -> (t -y; x -u)`, the inverse of `h`.
fn h_inv(r: &RingRef) -> Sl2Auto {
    Sl2Auto::from_strs(r, "(x t; u y) -> (t -y; x -u)", ["-y", "x", "t", "-u"])
}

fn diagonal_swap(r: &RingRef) -> Sl2Auto {
    Sl2Auto::from_strs(r, "(x t; u y) -> (y t; u x)", ["t", "u", "y", "x"])
}

fn transpose(r: &RingRef) -> Sl2Auto {
    Sl2Auto::from_strs(r, "(x t; u y) -> (x u; t y)", ["u", "t", "x", "y"])
}

fn scaling(r: &RingRef, mu: &FieldValue) -> Sl2Auto {
    let f = r.field();
    let v = |i| Poly::var_at(r, i);
    Sl2Auto::new(
        format!("(x t; u y) -> (mu x t; u y/mu), mu = {}", f.format_value(mu)),
        [v(0), v(1), v(2).scale(mu), v(3).scale(&mu.inv().unwrap())],
    )
}

fn in_sl2_t(r: &RingRef, d: &Poly) -> Poly {
    // d lies in k[t] inside k[s,t]
    d.compose(&[Poly::zero(r), Poly::var_at(r, 0)]).unwrap()
}

/// Entries `(a, t; c, b)` in the order `t, u, x, y`.
fn fibred_comps(st: &RingRef, a: &Poly, b: &Poly, c: &Poly) -> [Poly; 4] {
    [Poly::var_at(st, 1), c.clone(), a.clone(), b.clone()]
}

#[derive(Debug, Clone, Serialize)]
pub struct FibredNormalForm {
    pub p: String,
    pub q: String,
    pub word: Vec<Sl2Auto>,
    pub checks: Vec<CheckedIdentity>,
    #[serde(skip)]
    pub p_poly: Poly,
    #[serde(skip)]
    pub q_poly: Poly,
}

fn exact_quotient(n: &Poly, d: &Poly) -> Option<Poly> {
    n.exact_div(d).filter(|q| q.mul(d) == *n)
}

/// Normalize `(a t; c b)` with `ab - tc = 1`, entries in `k[s,t]`, to
/// `(1 + stp, t; s(p + q + stpq), 1 + stq)` by a diagonal scaling, a column
/// operation and a row operation, all commuting with the projection to `t`.
pub fn normalize_fibred(a: &Poly, b: &Poly, c: &Poly) -> Result<FibredNormalForm, EquivalenceError> {
    a.check_ring(b)?;
    a.check_ring(c)?;
    let st = a.ring().clone();
    if st.nvars() != 2 {
        return Err(EquivalenceError::InvalidInput("entries must lie in k[s,t]".into()));
    }
    let field = st.field().clone();
    let s = Poly::var_at(&st, 0);
    let t = Poly::var_at(&st, 1);
    let one = Poly::one(&st);
    let det = a.mul(b).sub(&t.mul(c));
    if det != one {
        return Err(EquivalenceError::NotUnimodular(det.to_string()));
    }
    let r = sl2_ring(&field);
    let original = fibred_comps(&st, a, b, c);
    let (mut a, mut b, mut c) = (a.clone(), b.clone(), c.clone());
    let mut word = Vec::new();

    let a0 = a.eval_var(1, &field.zero());
    let Some(a0) = a0.constant_value().filter(|v| !v.is_zero()) else {
        return Err(EquivalenceError::NormalizationFails(format!("a(s,0) = {a0} is not a nonzero constant")));
    };
    if !a0.is_one() {
        let mu = a0.inv().unwrap();
        a = a.scale(&mu);
        b = b.scale(&a0);
        word.push(scaling(&r, &mu));
    }
    let tdiv = |num: &Poly, what: &str| {
        exact_quotient(num, &t)
            .ok_or_else(|| EquivalenceError::NormalizationFails(format!("{what} = {num} is not divisible by t")))
    };
    let d = tdiv(&one.sub(&a.eval_var(0, &field.zero())), "1 - a(0,t)")?;
    if !d.is_zero() {
        a = a.add(&t.mul(&d));
        c = c.add(&b.mul(&d));
        let (tv, dv) = (Poly::var_at(&r, 0), in_sl2_t(&r, &d));
        word.push(Sl2Auto::new(
            format!("right multiplication by (1 0; d 1), d = {d}"),
            [tv.clone(), Poly::var_at(&r, 1).add(&Poly::var_at(&r, 3).mul(&dv)), Poly::var_at(&r, 2).add(&tv.mul(&dv)), Poly::var_at(&r, 3)],
        ));
    }
    let e = tdiv(&one.sub(&b.eval_var(0, &field.zero())), "1 - b(0,t)")?;
    if !e.is_zero() {
        b = b.add(&t.mul(&e));
        c = c.add(&e.mul(&a));
        let (tv, ev) = (Poly::var_at(&r, 0), in_sl2_t(&r, &e));
        word.push(Sl2Auto::new(
            format!("left multiplication by (1 0; e 1), e = {e}"),
            [tv.clone(), ev.mul(&Poly::var_at(&r, 2)).add(&Poly::var_at(&r, 1)), Poly::var_at(&r, 2), ev.mul(&tv).add(&Poly::var_at(&r, 3))],
        ));
    }
    let stp = s.mul(&t);
    let fail = |what: &str| EquivalenceError::NormalizationFails(format!("{what} is not divisible by st"));
    let p = exact_quotient(&a.sub(&one), &stp).ok_or_else(|| fail("a - 1"))?;
    let q = exact_quotient(&b.sub(&one), &stp).ok_or_else(|| fail("b - 1"))?;

    let mut checks = Vec::new();
    let expected_c = s.mul(&p.add(&q).add(&stp.mul(&p).mul(&q)));
    checks.push(CheckedIdentity::new("c = s(p + q + stpq)", &c.sub(&expected_c)));
    let mut replayed = original.clone();
    for w in &word {
        replayed = w.apply(&replayed);
    }
    let target = fibred_comps(&st, &a, &b, &c);
    for (i, name) in ["t", "u", "x", "y"].iter().enumerate() {
        checks.push(CheckedIdentity::new(format!("replayed word gives the normal form in {name}"), &replayed[i].sub(&target[i])));
    }
    let sum0 = p.add(&q).eval_var(1, &field.zero());
    let unit = sum0.constant_value().is_some_and(|v| !v.is_zero());
    checks.push(CheckedIdentity::new(
        "p(s,0) + q(s,0) is a nonzero constant",
        &if unit { Poly::zero(&st) } else { sum0 },
    ));
    if let Some(bad) = checks.iter().find(|c| !c.holds) {
        return Err(EquivalenceError::VerificationFailed(format!("{}: {}", bad.label, bad.residual)));
    }
    Ok(FibredNormalForm { p: p.to_string(), q: q.to_string(), word, checks, p_poly: p, q_poly: q })
}

/// The proof that the shifted components lie in `(s,t)^2`.
#[derive(Debug, Clone, Serialize)]
pub struct SubringCertificate {
    /// A common critical point of all four entries.
    pub point: (String, String),
    /// Entries after translating the point to the origin, minus constants.
    pub shifted: Vec<String>,
    pub memberships: Vec<CheckedIdentity>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome")]
pub enum Classification {
    EquivalentToRhoLambda { lambda: Scalar, word: Vec<Sl2Auto>, checks: Vec<CheckedIdentity> },
    Rejected { reason: String, certificate: Option<SubringCertificate> },
}

/// Classify an embedding `A2 -> SL2` whose entries have degree at most two:
/// either `G o rho = rho_lambda` for an explicit automorphism `G` of `SL2`,
/// or a reason why `rho` is not an embedding.
pub fn small_degree_classify(spec: &EmbeddingSpec) -> Result<Classification, EquivalenceError> {
    if spec.ambient != Ambient::Sl2 || spec.source.nvars() != 2 {
        return Err(EquivalenceError::InvalidInput("expected an embedding of the plane into SL2".into()));
    }
    classify_components(&std::array::from_fn(|i| spec.components[i].clone()))
}

/// [`small_degree_classify`] for entries given in the order `t, u, x, y`.
pub fn classify_components(comps: &[Poly; 4]) -> Result<Classification, EquivalenceError> {
    let field = comps[0].field().clone();
    if comps[0].ring().nvars() != 2 {
        return Err(EquivalenceError::InvalidInput("entries must lie in a ring in two variables".into()));
    }
    let mut out = classify(comps, Vec::new(), 0)?;
    if let Classification::EquivalentToRhoLambda { lambda, word, checks } = &mut out {
        let rho_lambda = construct(&field, Family::RhoLambda { lambda: lambda.value.clone() })?;
        let mut replayed = comps.clone();
        for g in word.iter() {
            replayed = g.apply(&replayed);
        }
        for (i, name) in ENTRY_NAMES.iter().enumerate() {
            let want = rho_lambda.components[i].compose(&[Poly::var_at(comps[0].ring(), 0), Poly::var_at(comps[0].ring(), 1)])?;
            checks.push(CheckedIdentity::new(
                format!("word applied to the input gives rho_lambda in {name}"),
                &replayed[i].sub(&want),
            ));
        }
        if let Some(bad) = checks.iter().find(|c| !c.holds) {
            return Err(EquivalenceError::VerificationFailed(format!("{}: {}", bad.label, bad.residual)));
        }
    }
    Ok(out)
}

fn degree(p: &Poly) -> Option<u32> {
    p.total_degree().finite()
}

fn rejected(reason: impl Into<String>) -> Classification {
    Classification::Rejected { reason: reason.into(), certificate: None }
}

const ENTRY_NAMES: [&str; 4] = ["t", "u", "x", "y"];

fn classify(comps: &[Poly; 4], prefix: Vec<Sl2Auto>, depth: usize) -> Result<Classification, EquivalenceError> {
    for c in comps {
        if let Some(d) = degree(c).filter(|&d| d > 2) {
            return Err(EquivalenceError::DegreeTooHigh(d));
        }
    }
    let st = comps[0].ring().clone();
    let r = sl2_ring(st.field());
    let original_det = comps[2].mul(&comps[3]).sub(&comps[0].mul(&comps[1]));
    if !original_det.is_one() {
        return Err(EquivalenceError::InvalidInput(format!("xy - tu = {original_det} on the components, not 1")));
    }
    let at = |name: &str| ENTRY_NAMES.iter().position(|n| *n == name).unwrap();

    // (a) a constant entry
    for name in ["x", "t", "u", "y"] {
        if degree(&comps[at(name)]).unwrap_or(0) == 0 {
            return constant_case(comps, prefix, name, &r);
        }
    }
    // (b) an entry of degree one
    for name in ["t", "x", "u", "y"] {
        if degree(&comps[at(name)]) == Some(1) {
            return linear_case(comps, prefix, name, &r);
        }
    }
    // (c) every entry of degree two
    let q11 = comps[at("x")].homogeneous_component(2);
    let q12 = comps[at("t")].homogeneous_component(2);
    let (m, c11) = q11.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let kappa = q12.coefficient(&m).checked_div(&c11).unwrap();
    if q12 == q11.scale(&kappa) && depth <= 2 {
        let mu = kappa.neg();
        let v = |i| Poly::var_at(&r, i);
        let g = Sl2Auto::new(
            format!("(x t; u y) -> (x, t + mu x; u, y + mu u), mu = {}", r.field().format_value(&mu)),
            [v(0).add(&v(2).scale(&mu)), v(1), v(2), v(3).add(&v(1).scale(&mu))],
        );
        let next = g.apply(comps);
        let mut prefix = prefix;
        prefix.push(g);
        return classify(&next, prefix, depth + 1);
    }
    critical_point_case(comps)
}

fn constant_case(comps: &[Poly; 4], mut prefix: Vec<Sl2Auto>, name: &str, r: &RingRef) -> Result<Classification, EquivalenceError> {
    let mut comps = comps.clone();
    let mover = match name {
        "t" => Some(h_inv(r)),
        "u" => Some(h(r)),
        "y" => Some(diagonal_swap(r)),
        _ => None,
    };
    if let Some(g) = mover {
        comps = g.apply(&comps);
        prefix.push(g);
    }
    let c0 = comps[2].constant_term();
    if c0.is_zero() {
        return Ok(rejected(format!(
            "the {name} entry vanishes, so tu = -1 on the image and the map is not an embedding of the plane"
        )));
    }
    if !c0.is_one() {
        let g = scaling(r, &c0.inv().unwrap());
        comps = g.apply(&comps);
        prefix.push(g);
    }
    finish_from_rho_one(&comps, prefix)
}

/// `comps` has `x = 1`, so `rho = rho_1 o phi` with `phi = (u, t)`. With
/// `lambda = Jac(phi) (-1)^(swaps in phi)` and `chi = d_lambda o phi^-1`,
/// `G o rho_1 = rho_1 o chi` for the lift `G` of `chi`, hence
/// `G o rho = rho_lambda` with `d_lambda = (lambda s, t)`.
fn finish_from_rho_one(comps: &[Poly; 4], mut prefix: Vec<Sl2Auto>) -> Result<Classification, EquivalenceError> {
    let st = comps[0].ring().clone();
    let field = st.field().clone();
    let r = sl2_ring(&field);
    let (phi_s, phi_t) = (&comps[1], &comps[0]);
    let jac = jacobian_det(phi_s, phi_t, &st.vars()[0], &st.vars()[1])?;
    let Some(j) = jac.constant_value().filter(|v| !v.is_zero()) else {
        return Ok(rejected(format!("(u, t) = ({phi_s}, {phi_t}) has Jacobian {jac}, so it is not an automorphism of the plane")));
    };
    let phi = match tame_decompose_checked(phi_s, phi_t) {
        Ok(d) => d.word,
        Err(e) => return Ok(rejected(format!("(u, t) is not an automorphism of the plane: {e}"))),
    };
    let lambda = if phi.swap_count() % 2 == 1 { j.neg() } else { j };
    let d_lambda = Generator::AffineLinear([[lambda.clone(), field.zero()], [field.zero(), field.one()]]);
    let flip = Generator::AffineLinear([[field.one(), field.zero()], [field.zero(), field.from_i64(-1)]]);
    // chi' = flip o chi o flip, where h o rho_1 = nu o flip.
    let mut chi = super::AutomorphismWord::new(&field, vec![flip.clone(), d_lambda]);
    chi = chi.then(&phi.inverse());
    chi.factors.push(flip);
    let [cs, ct] = chi.components(&st);
    let chi_word = tame_decompose_checked(&cs, &ct)?.word;
    if !chi_word.is_empty() {
        let lift = lift_word(&chi_word)?;
        let (hh, hi) = (h(&r), h_inv(&r));
        let inner: [Poly; 4] = std::array::from_fn(|i| lift.image_polys[i].compose(&hh.polys).unwrap());
        let g: [Poly; 4] = std::array::from_fn(|i| hi.polys[i].compose(&inner).unwrap());
        let g = Sl2Auto::new(format!("lift of {chi_word} conjugated by (x t; u y) -> (u x; -y -t)"), g);
        if !g.is_identity() {
            prefix.push(g);
        }
    }
    Ok(Classification::EquivalentToRhoLambda { lambda: Scalar::new(&field, lambda), word: prefix, checks: Vec::new() })
}

fn linear_case(comps: &[Poly; 4], mut prefix: Vec<Sl2Auto>, name: &str, r: &RingRef) -> Result<Classification, EquivalenceError> {
    let st = comps[0].ring().clone();
    let field = st.field().clone();
    let mut comps = comps.clone();
    let movers: Vec<Sl2Auto> = match name {
        "x" => vec![h(r)],
        "u" => vec![transpose(r)],
        "y" => vec![diagonal_swap(r), h(r)],
        _ => vec![],
    };
    for g in movers {
        comps = g.apply(&comps);
        prefix.push(g);
    }
    // Source change making the t entry equal to t.
    let f12 = &comps[0];
    let coeff = |i| f12.coefficient(&Monomial::var(2, i, 1));
    let (alpha, beta, gamma) = (coeff(0), coeff(1), f12.constant_term());
    let s = Poly::var_at(&st, 0);
    let t = Poly::var_at(&st, 1);
    let g0 = Poly::constant(&st, gamma);
    let source = if !beta.is_zero() {
        [s.clone(), t.sub(&s.scale(&alpha)).sub(&g0).scale(&beta.inv().unwrap())]
    } else {
        [t.sub(&g0).scale(&alpha.inv().unwrap()), s.clone()]
    };
    let moved: [Poly; 4] = std::array::from_fn(|i| comps[i].compose(&source).unwrap());
    debug_assert_eq!(moved[0], t);
    let nf = normalize_fibred(&moved[2], &moved[3], &moved[1])?;
    let (Some(p), Some(q)) = (nf.p_poly.constant_value(), nf.q_poly.constant_value()) else {
        return Ok(rejected(format!("inconclusive: p = {}, q = {} are not constants", nf.p, nf.q)));
    };
    if !p.is_zero() && !q.is_zero() {
        let xi = p.add(&q).checked_div(&p.mul(&q)).unwrap();
        return Ok(rejected(format!(
            "p = {}, q = {} are both nonzero: the line x = y + xi = 0 is missing from the image, xi = {}",
            field.format_value(&p),
            field.format_value(&q),
            field.format_value(&xi)
        )));
    }
    for g in nf.word {
        comps = g.apply(&comps);
        prefix.push(g);
    }
    if !p.is_zero() {
        let g = diagonal_swap(r);
        comps = g.apply(&comps);
        prefix.push(g);
    }
    debug_assert!(comps[2].is_one());
    finish_from_rho_one(&comps, prefix)
}

/// Solve `A v = b` over the field; rows are `[a1, a2, b]`.
fn solve_2(rows: &[[FieldValue; 3]], field: &Field) -> Option<[FieldValue; 2]> {
    let mut rows: Vec<[FieldValue; 3]> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..2 {
        let Some(pr) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, pr);
        let inv = rows[rank][col].inv().unwrap();
        for k in 0..3 {
            rows[rank][k] = rows[rank][k].mul(&inv);
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for k in 0..3 {
                    let v = rows[i][k].sub(&f.mul(&rows[rank][k]));
                    rows[i][k] = v;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| !r[2].is_zero()) {
        return None;
    }
    let mut sol = [field.zero(), field.zero()];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = rows[i][2].clone();
    }
    Some(sol)
}

/// All entries of degree two with independent quadratic parts: find a point
/// where every entry is critical, then check that the entries minus their
/// values there lie in the square of its maximal ideal.
fn critical_point_case(comps: &[Poly; 4]) -> Result<Classification, EquivalenceError> {
    let st = comps[0].ring().clone();
    let field = st.field().clone();
    let mut rows = Vec::new();
    for c in comps {
        for i in 0..2 {
            let d = c.derivative(i);
            let co = |j| d.coefficient(&Monomial::var(2, j, 1));
            rows.push([co(0), co(1), d.constant_term().neg()]);
        }
    }
    let Some([s0, t0]) = solve_2(&rows, &field) else {
        return Ok(rejected(
            "inconclusive: the entries have no common critical point over the field, so the subring obstruction does not apply",
        ));
    };
    let s = Poly::var_at(&st, 0);
    let t = Poly::var_at(&st, 1);
    let shift = [s.add(&Poly::constant(&st, s0.clone())), t.add(&Poly::constant(&st, t0.clone()))];
    let square = IdealBasis::with_default_order(&st, vec![s.pow(2), s.mul(&t), t.pow(2)])?;
    let mut shifted = Vec::new();
    let mut memberships = Vec::new();
    for (name, c) in ENTRY_NAMES.iter().zip(comps) {
        let moved = c.compose(&shift)?;
        let reduced = moved.sub(&Poly::constant(&st, moved.constant_term()));
        let member = ideal_membership(&reduced, &square)?.is_member();
        memberships.push(CheckedIdentity::new(
            format!("shifted {name} entry lies in (s,t)^2"),
            &if member { Poly::zero(&st) } else { reduced.clone() },
        ));
        shifted.push(reduced.to_string());
    }
    if memberships.iter().any(|m| !m.holds) {
        return Ok(rejected("inconclusive: a shifted entry has a linear part"));
    }
    let point = (field.format_value(&s0), field.format_value(&t0));
    let reason = format!(
        "all entries are critical at (s,t) = ({}, {}): the components generate a subring of k + (s,t)^2, a proper subring of k[s,t]",
        point.0, point.1
    );
    Ok(Classification::Rejected { reason, certificate: Some(SubringCertificate { point, shifted, memberships }) })
}

/// Witness that `P` is a coordinate of `k(t)[x,y]`.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome")]
pub enum VariableCertificate {
    Variable { field: String, images: Vec<String>, inverse: Vec<String>, checks: Vec<CheckedIdentity> },
    Inconclusive { reason: String },
}

/// If `P = c(t) y + d(t,x)` with `c != 0` (or the same with `x` and `y`
/// exchanged), the `k(t)`-automorphism sending `x` to `P` is returned
/// together with its inverse; both composites are checked.
pub fn certify_variable_kt(p: &Poly) -> Result<VariableCertificate, EquivalenceError> {
    let r = p.ring();
    let idx = |n: &str| r.index_of(n).ok_or_else(|| EquivalenceError::InvalidInput("P must lie in k[t,x,y]".into()));
    let (ti, xi, yi) = (idx("t")?, idx("x")?, idx("y")?);
    if r.nvars() != 3 {
        return Err(EquivalenceError::InvalidInput("P must lie in k[t,x,y]".into()));
    }
    let base = r.field().clone();
    let kt = Field::fractions(base, "t").map_err(|e| EquivalenceError::UnsupportedField(e.to_string()))?;
    let kxy = ring(&kt, &["x", "y"]);
    let mut reasons = Vec::new();
    for (axis, ai, other) in [("y", yi, "x"), ("x", xi, "y")] {
        let parts = p.coefficients_in(ai);
        if parts.len() != 2 {
            reasons.push(format!("P has degree {} in {axis}", p.degree_in(ai)));
            continue;
        }
        let c = &parts[1];
        if c.support_vars().iter().any(|&i| i != ti) {
            reasons.push(format!("the coefficient {c} of {axis} involves {other}"));
            continue;
        }
        let c = c.absorb_variable("t", &kxy)?.constant_value().expect("coefficient in k[t]");
        let d = parts[0].absorb_variable("t", &kxy)?;
        let big_p = p.absorb_variable("t", &kxy)?;
        let x = Poly::var_at(&kxy, 0);
        let y = Poly::var_at(&kxy, 1);
        let cinv = c.inv().unwrap();
        // sigma sends the first coordinate to P; the other coordinate goes
        // to the free variable of d.
        let (sigma, inverse) = if axis == "y" {
            let dy = d.compose(&[y.clone(), x.clone()])?;
            ([big_p.clone(), x.clone()], [y.clone(), x.sub(&dy).scale(&cinv)])
        } else {
            let dy = d.compose(&[x.clone(), y.clone()])?;
            ([big_p.clone(), y.clone()], [x.sub(&dy).scale(&cinv), y.clone()])
        };
        let vars = [x.clone(), y.clone()];
        let mut checks = Vec::new();
        for (i, v) in ["x", "y"].iter().enumerate() {
            let a = sigma[i].compose(&inverse)?;
            checks.push(CheckedIdentity::new(format!("sigma then inverse fixes {v}"), &a.sub(&vars[i])));
        }
        for (i, v) in ["x", "y"].iter().enumerate() {
            let b = inverse[i].compose(&sigma)?;
            checks.push(CheckedIdentity::new(format!("inverse then sigma fixes {v}"), &b.sub(&vars[i])));
        }
        if let Some(bad) = checks.iter().find(|c| !c.holds) {
            return Err(EquivalenceError::VerificationFailed(format!("{}: {}", bad.label, bad.residual)));
        }
        return Ok(VariableCertificate::Variable {
            field: kt.to_string(),
            images: sigma.iter().map(|p| p.to_string()).collect(),
            inverse: inverse.iter().map(|p| p.to_string()).collect(),
            checks,
        });
    }
    Ok(VariableCertificate::Inconclusive { reason: reasons.join("; ") })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(f: &Field) -> RingRef {
        ring(f, &["s", "t"])
    }

    fn entries(f: &Field, tuxy: [&str; 4]) -> [Poly; 4] {
        let r = st(f);
        tuxy.map(|e| Poly::parse(&r, e).unwrap())
    }

    #[test]
    fn normal_form_examples() {
        let f = Field::Rationals;
        let [_, c, a, b] = entries(&f, ["t", "s", "1", "1 + s*t"]);
        let nf = normalize_fibred(&a, &b, &c).unwrap();
        assert_eq!((nf.p.as_str(), nf.q.as_str(), nf.word.len()), ("0", "1", 0));
        let [_, c, a, b] = entries(&f, ["t", "3*s", "1", "1 + 3*s*t"]);
        let nf = normalize_fibred(&a, &b, &c).unwrap();
        assert_eq!((nf.p.as_str(), nf.q.as_str()), ("0", "3"));
        let [_, c, a, b] = entries(&f, ["t", "s", "1 + s*t", "1"]);
        let nf = normalize_fibred(&a, &b, &c).unwrap();
        assert_eq!((nf.p.as_str(), nf.q.as_str()), ("1", "0"));
        // a scaled and sheared copy still normalizes
        let [_, c, a, b] = entries(&f, ["t", "2 + s + s*t + t", "2 + 2*t", "(1 + s*t + t)/2"]);
        assert_eq!(a.mul(&b).sub(&Poly::var_at(a.ring(), 1).mul(&c)), Poly::one(a.ring()));
        let nf = normalize_fibred(&a, &b, &c).unwrap();
        assert!(nf.checks.iter().all(|c| c.holds));
        assert!(!nf.word.is_empty());
        let [_, c, a, b] = entries(&f, ["t", "s", "1", "1"]);
        assert!(matches!(normalize_fibred(&a, &b, &c), Err(EquivalenceError::NotUnimodular(_))));
    }

    fn lambda_of(c: &Classification) -> Option<(String, usize)> {
        match c {
            Classification::EquivalentToRhoLambda { lambda, word, .. } => Some((lambda.text.clone(), word.len())),
            Classification::Rejected { .. } => None,
        }
    }

    #[test]
    fn rho_lambda_is_recognized() {
        let f = Field::Rationals;
        for l in [1, 3, -2] {
            let spec = construct(&f, Family::RhoLambda { lambda: f.from_i64(l) }).unwrap();
            let c = small_degree_classify(&spec).unwrap();
            assert_eq!(lambda_of(&c), Some((l.to_string(), 0)));
        }
    }

    #[test]
    fn swapped_source_still_gives_one() {
        let f = Field::Rationals;
        let c = classify_components(&entries(&f, ["s", "t", "1", "1 + s*t"])).unwrap();
        let (l, n) = lambda_of(&c).unwrap();
        assert_eq!(l, "1");
        assert!(n > 0);
    }

    #[test]
    fn permuted_and_linear_entries() {
        let f = Field::prime(5).unwrap();
        // rho_2 with x and y exchanged and the t entry moved into u
        let r = st(&f);
        let sheared = |e: [&str; 4]| {
            let img = [Poly::var_at(&r, 0), Poly::parse(&r, "t + s").unwrap()];
            entries(&f, e).map(|p| p.compose(&img).unwrap())
        };
        let column = ["t", "2*s + 2*t + 1 + 2*s*t + 2*t^2", "1 + t", "1 + 2*s*t + 2*t^2"];
        for (e, comps) in [
            ("h", entries(&f, ["1", "-1 - 2*s*t", "2*s", "-t"])),
            ("diagonal swap", entries(&f, ["t", "2*s", "1 + 2*s*t", "1"])),
            ("column", entries(&f, column)),
            ("column, sheared source", sheared(column)),
        ] {
            assert!(comps[2].mul(&comps[3]).sub(&comps[0].mul(&comps[1])).is_one(), "{e:?}");
            let c = classify_components(&comps).unwrap();
            assert!(lambda_of(&c).is_some(), "{e:?}: {c:?}");
        }
    }

    #[test]
    fn degenerate_inputs() {
        let f = Field::Rationals;
        // (1 + st, t; s(2 + st), 1 + st) is a normal form with p = q = 1
        let c = classify_components(&entries(&f, ["t", "2*s + s^2*t", "1 + s*t", "1 + s*t"]));
        assert!(matches!(c, Err(EquivalenceError::DegreeTooHigh(3))));
        let c = classify_components(&entries(&f, ["t", "2*s", "1 + s*t", "1 + s*t"]));
        assert!(matches!(c, Err(EquivalenceError::InvalidInput(_))));
        let c = classify_components(&entries(&f, ["1", "-1", "0", "s"])).unwrap();
        assert!(matches!(c, Classification::Rejected { certificate: None, .. }));
    }

    #[test]
    fn subring_obstruction() {
        let f = Field::Rationals;
        let c = classify_components(&entries(&f, ["s*t + 1", "s*t - 1", "s^2", "t^2"])).unwrap();
        let Classification::Rejected { certificate: Some(cert), .. } = c else { panic!("{c:?}") };
        assert_eq!(cert.point, ("0".to_string(), "0".to_string()));
        assert!(cert.memberships.iter().all(|m| m.holds));
        // translated copy: critical point moves to (1, -2)
        let moved = entries(&f, ["(s-1)*(t+2) + 1", "(s-1)*(t+2) - 1", "(s-1)^2", "(t+2)^2"]);
        let Classification::Rejected { certificate: Some(cert), .. } = classify_components(&moved).unwrap() else { panic!() };
        assert_eq!(cert.point, ("1".to_string(), "-2".to_string()));
    }

    #[test]
    fn variable_criterion() {
        let f = Field::Rationals;
        let txy = ring(&f, &["t", "x", "y"]);
        let p = Poly::parse(&txy, "y").unwrap();
        assert!(matches!(certify_variable_kt(&p).unwrap(), VariableCertificate::Variable { .. }));
        let p = Poly::parse(&txy, "t*y - (x - t)*(x - 1 - t^3)").unwrap();
        let VariableCertificate::Variable { checks, .. } = certify_variable_kt(&p).unwrap() else { panic!() };
        assert_eq!(checks.len(), 4);
        let p = Poly::parse(&txy, "t^2*x + y^3").unwrap();
        assert!(matches!(certify_variable_kt(&p).unwrap(), VariableCertificate::Variable { .. }));
        let f2 = Field::prime(2).unwrap();
        let maps = crate::embeddings::not_var_kt_maps(&f2, 2, 3).unwrap();
        assert!(matches!(certify_variable_kt(&maps.p).unwrap(), VariableCertificate::Inconclusive { .. }));
    }
}
