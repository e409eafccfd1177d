//! The built-in verification suite. Every check recomputes its identities
//! from scratch; records come out in declaration order.

use std::time::Instant;

use quadric_core::embeddings::{
    builtin_certificate, certify_closed, construct, degenerate_fibre_profile, fibre_triviality_check,
    final_a4_left_inverse, formof_a1_witness, not_var_kt_maps, nu_hat_check, q2_chart_isomorphism_check, ring,
    shastri_identities, sl2_ring, surface_e_chain, CheckedIdentity, EmbeddingError, Family, FibreProfile,
    FibreTriviality, PairMember,
};
use quadric_core::equivalence::{
    certify_variable_kt, classify_components, jac_extension_decide, normalize_fibred, nu_equiv, nu_extension, pr_equiv,
    small_degree_classify, tame_decompose, univariate, AutomorphismWord, Classification, EquivalenceError,
    ExtensionDecision, Generator, Obstruction, Outcome, VariableCertificate, Witness,
};
use quadric_core::field::{Field, FieldValue};
use quadric_core::ideals::{
    ideal_membership, key_normal_form, preserved_subring_check, IdealBasis, IdealError,
};
use quadric_core::poly::{AlgebraError, Degree, Monomial, Poly, RingRef};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exit;
use crate::report::{Record, Status};

const SEED: u64 = 0x5eed_2024;

/// Largest characteristic for which the exhaustive char-p checks run.
pub const CHARP_EXHAUSTIVE_MAX: u32 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Any,
    CharZero,
    PositiveChar,
    CharNot2,
}

impl Scope {
    fn skip_reason(self, field: &Field) -> Option<&'static str> {
        let c = field.characteristic();
        match self {
            Scope::Any => None,
            Scope::CharZero if c != 0 => Some("characteristic 0 only"),
            Scope::PositiveChar if c == 0 => Some("positive characteristic only"),
            Scope::CharNot2 if c == 2 => Some("characteristic different from 2 only"),
            _ => None,
        }
    }
}

/// Why a check could not produce a finding.
#[derive(Debug, Clone)]
pub enum CheckError {
    /// An internal budget ran out; the claim is neither confirmed nor refuted.
    Budget(String),
    Failed(String),
}

impl From<IdealError> for CheckError {
    fn from(e: IdealError) -> CheckError {
        match e {
            IdealError::BudgetExceeded { .. } => CheckError::Budget(e.to_string()),
            _ => CheckError::Failed(e.to_string()),
        }
    }
}

impl From<EmbeddingError> for CheckError {
    fn from(e: EmbeddingError) -> CheckError {
        match e {
            EmbeddingError::Ideal(inner) => inner.into(),
            _ => CheckError::Failed(e.to_string()),
        }
    }
}

impl From<EquivalenceError> for CheckError {
    fn from(e: EquivalenceError) -> CheckError {
        match e {
            EquivalenceError::Ideal(inner) => inner.into(),
            EquivalenceError::Embedding(inner) => inner.into(),
            _ => CheckError::Failed(e.to_string()),
        }
    }
}

impl From<AlgebraError> for CheckError {
    fn from(e: AlgebraError) -> CheckError {
        CheckError::Failed(e.to_string())
    }
}

pub struct Finding {
    pub status: Status,
    pub detail: String,
    pub data: Option<serde_json::Value>,
}

impl Finding {
    fn new(status: Status, detail: impl Into<String>) -> Finding {
        Finding { status, detail: detail.into(), data: None }
    }

    fn verdict(ok: bool, detail: impl Into<String>) -> Finding {
        Finding::new(if ok { Status::Pass } else { Status::Fail }, detail)
    }

    fn skipped(reason: impl Into<String>) -> Finding {
        Finding::new(Status::Skipped, reason)
    }

    /// Pass iff every residual is zero; failing residuals are printed.
    fn identities(ids: &[CheckedIdentity]) -> Finding {
        let bad: Vec<String> = ids.iter().filter(|c| !c.holds).map(|c| format!("{}: residual {}", c.label, c.residual)).collect();
        let detail = if bad.is_empty() {
            format!("{} {}, every residual 0", ids.len(), if ids.len() == 1 { "identity" } else { "identities" })
        } else {
            bad.join("; ")
        };
        Finding::verdict(bad.is_empty(), detail).data(ids)
    }

    fn data(mut self, value: impl Serialize) -> Finding {
        self.data = serde_json::to_value(value).ok();
        self
    }
}

type CheckResult = Result<Finding, CheckError>;

pub struct Check {
    pub name: &'static str,
    pub anchor: &'static str,
    pub scope: Scope,
    run: fn(&Field) -> CheckResult,
}

impl Check {
    /// Run the check over `field`, honouring its scope.
    pub fn record(&self, field: &Field) -> Record {
        let start = Instant::now();
        let finding = match self.scope.skip_reason(field) {
            Some(reason) => Finding::skipped(reason),
            None => match (self.run)(field) {
                Ok(f) => f,
                Err(CheckError::Budget(m)) => Finding::new(Status::Inconclusive, format!("budget exhausted: {m}")),
                Err(CheckError::Failed(m)) => Finding::new(Status::Fail, format!("error: {m}")),
            },
        };
        let rec = Record::new(self.name, self.anchor, finding.status, finding.detail).timed(start.elapsed());
        match finding.data {
            Some(d) => rec.with_data(d),
            None => rec,
        }
    }
}

macro_rules! checks {
    ($($name:literal, $scope:ident, $anchor:literal => $run:expr;)*) => {
        &[$(Check { name: $name, anchor: $anchor, scope: Scope::$scope, run: $run }),*]
    };
}

pub static CHECKS: &[Check] = checks! {
    "q2-chart-isomorphism", Any, "rho and psi are mutually inverse on both charts of Q2" => q2_charts;
    "nu-p-on-quadric", Any, "nu_p = (t(1+tp), p, tp) lands in xy = z(z+1) for random p of degree <= 5" => nu_on_quadric;
    "nu-hat-diagonal", Any, "the closure of nu_p meets the diagonal along u^(d+2) = 0" => nu_hat_diagonal;
    "nu-p-closed", Any, "nu_p is a closed embedding" => nu_closed;
    "nu-cn-pairwise", Any, "the curves C_n, n = 1..6, are pairwise non-equivalent" => nu_cn_pairwise;
    "nu-rigid-p12", CharZero, "p = t(t+1)^2(t+2)^3 admits only lambda = 1, mu = 0" => nu_rigid_p12;
    "nu-extension", Any, "alpha preserves Q2 and alpha o nu_p = nu_q o beta for every witness" => nu_extensions;
    "rho-lambda-closed", Any, "rho_lambda lies in SL2 and is a closed embedding" => rho_lambda_closed;
    "shastri-cubic-left-inverse", Any, "3g3 - 12g1 - 5g1g2 + g2g3 - g1^3 = t on the trefoil" => |f| shastri(f, 0);
    "shastri-quartic", Any, "g1^2(g1^2 - 4) - g2(g2^2 + 9g2 + 24) = 16 on the trefoil" => |f| shastri(f, 1);
    "shastri-sl2-determinant", CharNot2, "the trefoil matrix has determinant 1" => |f| shastri(f, 2);
    "shastri-sl2-left-inverse", CharNot2, "a polynomial on SL2 recovers t from the trefoil matrix" => |f| shastri(f, 3);
    "shastri-a3-closed", Any, "the trefoil is a closed curve in A3" => shastri_closed;
    "surface-e-chain", Any, "both cleared identities of the E witness chain lie in the ideal of E" => e_chain;
    "surface-e-groebner", Any, "the Groebner basis of the ideal of E completes and verifies" => e_groebner;
    "surface-e-closed", Any, "E is a closed embedding through its generator chain" => e_closed;
    "surface-e-final-inverse", Any, "the simplified embedding of E into A4 has a polynomial left inverse" => e_final_inverse;
    "pr-fibre-profile", Any, "P_r has degenerate fibre x(x - 1) and line fibres off t = 0" => pr_profile;
    "pr-closed", Any, "the P_r embedding is closed" => pr_closed;
    "pr-equiv", Any, "P_r and P_s are equivalent exactly when r = s" => pr_pairs;
    "pr-variable-kt", Any, "P_r is a variable of k(t)[x,y]" => pr_variable;
    "nonequiv-pair-closed", Any, "the P and Q embeddings are closed" => nonequiv_closed;
    "fibred-closed", Any, "a fibred family member is a closed embedding" => fibred_closed;
    "fibred-normal-form", Any, "fibred embeddings normalize to (1 + stp, t; s(p + q + stpq), 1 + stq)" => fibred_normal;
    "small-degree-rho-lambda", Any, "rho_lambda is recognized with its own lambda" => small_degree_rho;
    "small-degree-subring", Any, "(st + 1, st - 1, s^2, t^2) is rejected by an (s,t)^2 membership certificate" => small_degree_subring;
    "jac-lift-generators", Any, "swap and (x, y + p(x)) lift to automorphisms of SL2" => jac_generators;
    "jac-scaling", Any, "(2x, y) does not extend; (2x, y/2) extends" => jac_scaling;
    "tame-recomposition", Any, "tame decompositions of 50 random words recompose to the input" => tame_words;
    "key-normal-form", Any, "normal forms in k[t,x,y][u]/(t^n u - xy + 1) recompose with t-degree below n" => key_forms;
    "key-preserved-subring", Any, "lifted automorphisms fix t and preserve k[t,x,y]" => key_preserved;
    "charp-line", PositiveChar, "every char-p line satisfies x + a^(p^2) x^(pq) - b^(p^2) y^(p^2) = 0" => charp_lines;
    "charp-line-closed", PositiveChar, "the char-p line embedding is closed" => charp_line_closed;
    "charp-kt-witness", PositiveChar, "over F_p(T) the curve with t = T^p is parametrized by a line" => charp_kt;
    "charp-not-var-kt", PositiveChar, "chi o tau = id and tau o chi = id on the char-p fibred hypersurface" => charp_not_var;
    "charp-hypersurface", PositiveChar, "the char-p hypersurface embedding is closed" => charp_hypersurface;
};

pub fn find(name: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.name == name)
}

/// Run every check matching `filter` (all when `None`); checks run in
/// parallel and come back in declaration order.
pub fn run(field: &Field, filter: Option<&glob::Pattern>) -> Vec<Record> {
    let selected: Vec<&Check> = CHECKS.iter().filter(|c| filter.is_none_or(|p| p.matches(c.name))).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = selected.iter().map(|c| scope.spawn(move || c.record(field))).collect();
        handles
            .into_iter()
            .zip(&selected)
            .map(|(h, c)| {
                h.join().unwrap_or_else(|_| Record::new(c.name, c.anchor, Status::Fail, "check panicked"))
            })
            .collect()
    })
}

/// 0 when nothing failed, 2 on any failure, 3 when a budget ran out.
pub fn exit_code(records: &[Record]) -> u8 {
    if records.iter().any(|r| r.status == Status::Fail) {
        exit::FAILED
    } else if records.iter().any(|r| r.status == Status::Inconclusive) {
        exit::BUDGET
    } else {
        exit::OK
    }
}

fn parse(r: &RingRef, s: &str) -> Poly {
    Poly::parse(r, s).unwrap_or_else(|e| panic!("built-in expression {s:?}: {e}"))
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

/// Random polynomial in the first variable of `r` of degree at most `max_deg`.
fn random_univariate(rng: &mut ChaCha8Rng, r: &RingRef, max_deg: u32) -> Poly {
    let x = Poly::var_at(r, 0);
    let deg = rng.gen_range(0..=max_deg);
    (0..=deg).fold(Poly::zero(r), |acc, k| acc.add(&x.pow(k).scale(&r.field().from_i64(rng.gen_range(-9..=9)))))
}

/// A nonzero element of `field` from `candidates`, falling back to 1.
fn nonzero(field: &Field, candidates: &[i64]) -> FieldValue {
    candidates.iter().map(|&c| field.from_i64(c)).find(|v| !v.is_zero()).unwrap_or_else(|| field.one())
}

fn closedness(field: &Field, family: Family) -> Result<Vec<CheckedIdentity>, CheckError> {
    let spec = construct(field, family)?;
    let mut ids = Vec::new();
    if let Ok(c) = spec.verify_on_quadric() {
        ids.push(c);
    }
    ids.extend(spec.verify_hypersurface()?);
    ids.extend(certify_closed(&spec, builtin_certificate(&spec)?)?.identities);
    Ok(ids)
}

fn q2_charts(f: &Field) -> CheckResult {
    Ok(Finding::identities(&q2_chart_isomorphism_check(f)?))
}

fn nu_on_quadric(f: &Field) -> CheckResult {
    let tr = ring(f, &["t"]);
    let mut rng = rng();
    let mut ids = Vec::new();
    for _ in 0..20 {
        let p = random_univariate(&mut rng, &tr, 5);
        let spec = construct(f, Family::NuP { p: p.clone() })?;
        let mut c = spec.verify_on_quadric()?;
        c.label = format!("nu_p on Q2 for p = {p}");
        ids.push(c);
    }
    Ok(Finding::identities(&ids))
}

fn nu_hat_diagonal(f: &Field) -> CheckResult {
    let tr = ring(f, &["t"]);
    let mut ids = Vec::new();
    for p in ["t + 2", "t^2 - t + 3", "t^3 + 2*t - 1"] {
        ids.extend(nu_hat_check(&parse(&tr, p))?);
    }
    Ok(Finding::identities(&ids))
}

fn nu_closed(f: &Field) -> CheckResult {
    let tr = ring(f, &["t"]);
    let mut ids = Vec::new();
    for p in ["t^3 - t + 1", "t^2 + 1"] {
        ids.extend(closedness(f, Family::NuP { p: parse(&tr, p) })?);
    }
    Ok(Finding::identities(&ids))
}

/// `t^n (t + 1)^(n + 1)`.
pub fn c_n(tr: &RingRef, n: u32) -> Poly {
    let t = Poly::var_at(tr, 0);
    t.pow(n).mul(&t.add(&Poly::one(tr)).pow(n + 1))
}

fn nu_cn_pairwise(f: &Field) -> CheckResult {
    let tr = ring(f, &["t"]);
    let mut bad = Vec::new();
    let mut inconclusive = Vec::new();
    for i in 1..=6 {
        for j in 1..=6 {
            let v = nu_equiv(&c_n(&tr, i), &c_n(&tr, j))?;
            let ok = match &v.outcome {
                Outcome::Inconclusive(m) => {
                    inconclusive.push(format!("C_{i} vs C_{j}: {m}"));
                    true
                }
                Outcome::Equivalent(_) => i == j,
                Outcome::NotEquivalent(Obstruction::DegreeMismatch { .. }) => i != j,
                Outcome::NotEquivalent(_) => false,
            };
            if !ok {
                bad.push(format!("C_{i} vs C_{j}: {}", serde_json::to_string(&v).unwrap()));
            }
        }
    }
    if !bad.is_empty() {
        return Ok(Finding::verdict(false, bad.join("; ")));
    }
    if !inconclusive.is_empty() {
        return Ok(Finding::new(Status::Inconclusive, inconclusive.join("; ")));
    }
    Ok(Finding::verdict(true, "36 pairs: equivalent on the diagonal, degree mismatch elsewhere"))
}

fn nu_rigid_p12(f: &Field) -> CheckResult {
    let tr = ring(f, &["t"]);
    let p = parse(&tr, "t*(t + 1)^2*(t + 2)^3");
    let v = nu_equiv(&p, &p)?;
    let ok = match &v.outcome {
        Outcome::Equivalent(Witness::ScaleShift { solutions }) => {
            solutions.len() == 1 && solutions[0].0.text == "1" && solutions[0].1.text == "0"
        }
        _ => false,
    };
    Ok(Finding::verdict(ok, format!("solutions: {}", serde_json::to_string(&v.outcome).unwrap())).data(&v))
}

/// Ten `(q, lambda, mu)` triples; `p(t) = lambda q(lambda t + mu)`.
pub const EXTENSION_CORPUS: [(&str, i64, i64); 10] = [
    ("t^3 + t + 1", 2, 0),
    ("t^4 - 2*t + 3", 3, 1),
    ("t^3 - t^2 + 5", -1, 2),
    ("2*t^3 + t", 1, 1),
    ("t^4 + t^3 - 1", 5, -1),
    ("t^3 + 7", 2, 3),
    ("t^5 - t", -2, 1),
    ("t^3 + 2*t^2 + 3*t", 3, -2),
    ("t^4 + 1", 1, 0),
    ("t^3 - 3*t + 2", 7, 4),
];

fn nu_extensions(f: &Field) -> CheckResult {
    let tr = ring(f, &["t"]);
    let t = Poly::var_at(&tr, 0);
    let mut ids = Vec::new();
    let mut notes = Vec::new();
    for (q, l, m) in EXTENSION_CORPUS {
        let q = parse(&tr, q);
        let lambda = nonzero(f, &[l]);
        let mu = f.from_i64(m);
        let p = q.compose(&[t.scale(&lambda).add(&Poly::constant(&tr, mu.clone()))])?.scale(&lambda);
        let v = nu_equiv(&p, &q)?;
        let solutions = match v.outcome {
            Outcome::Equivalent(Witness::ScaleShift { solutions }) => solutions,
            Outcome::Inconclusive(m) => return Ok(Finding::new(Status::Inconclusive, m)),
            other => {
                return Ok(Finding::verdict(false, format!("p = {p}, q = {q}: {}", serde_json::to_string(&other).unwrap())))
            }
        };
        if !solutions.iter().any(|(a, b)| a.value == lambda && b.value == mu) {
            notes.push(format!("p = {p}: constructed witness missing from the solutions"));
        }
        for (a, b) in &solutions {
            let ext = nu_extension(&p, &q, &a.value, &b.value)?;
            ids.extend(ext.checks);
        }
    }
    if !notes.is_empty() {
        return Ok(Finding::verdict(false, notes.join("; ")));
    }
    Ok(Finding::identities(&ids))
}

fn rho_lambda_closed(f: &Field) -> CheckResult {
    Ok(Finding::identities(&closedness(f, Family::RhoLambda { lambda: nonzero(f, &[3, 2]) })?))
}

fn shastri(f: &Field, index: usize) -> CheckResult {
    let ids = shastri_identities(f)?;
    match ids.get(index) {
        Some(c) => Ok(Finding::identities(std::slice::from_ref(c))),
        None => Ok(Finding::verdict(false, format!("identity {index} was not produced"))),
    }
}

fn shastri_closed(f: &Field) -> CheckResult {
    Ok(Finding::identities(&closedness(f, Family::ShastriA3)?))
}

fn e_chain(f: &Field) -> CheckResult {
    Ok(Finding::identities(&surface_e_chain(f)?))
}

fn e_groebner(f: &Field) -> CheckResult {
    let r = sl2_ring(f);
    let ideal = IdealBasis::with_default_order(&r, vec![parse(&r, "x*y - t*u - 1"), parse(&r, "t*y - x*(x - 1)")])?;
    let gb = ideal.groebner()?;
    gb.verify()?;
    let basis: Vec<String> = gb.basis().iter().map(|p| p.to_string()).collect();
    Ok(Finding::verdict(true, format!("{} basis elements after {} S-pairs, certificate verified", basis.len(), gb.spairs()))
        .data(basis))
}

fn e_closed(f: &Field) -> CheckResult {
    Ok(Finding::identities(&closedness(f, Family::SurfaceE)?))
}

fn e_final_inverse(f: &Field) -> CheckResult {
    let inv = final_a4_left_inverse(f)?;
    Ok(Finding::identities(&inv.identities))
}

const PR_CORPUS: [&str; 4] = ["0", "1", "t", "t^2 + 1"];

fn pr_profile(f: &Field) -> CheckResult {
    let tr = ring(f, &["t"]);
    let mut bad = Vec::new();
    for r in PR_CORPUS {
        let spec = construct(f, Family::Pr { r: parse(&tr, r) })?;
        let p = spec.hypersurface.clone().expect("P_r has an image equation");
        let profile = degenerate_fibre_profile(&p)?;
        let shape_ok = matches!(&profile, FibreProfile::Shape { axis, m: 1, .. } if axis == "x");
        let lines_ok = matches!(fibre_triviality_check(&p), FibreTriviality::AllFibresOffZeroAreLines { .. });
        if !(shape_ok && lines_ok) {
            bad.push(format!("r = {r}: profile {profile:?}, line fibres {lines_ok}"));
        }
    }
    Ok(Finding::verdict(bad.is_empty(), if bad.is_empty() { format!("{} values of r", PR_CORPUS.len()) } else { bad.join("; ") }))
}

fn pr_closed(f: &Field) -> CheckResult {
    let tr = ring(f, &["t"]);
    Ok(Finding::identities(&closedness(f, Family::Pr { r: parse(&tr, "t") })?))
}

fn pr_pairs(f: &Field) -> CheckResult {
    let tr = ring(f, &["t"]);
    let mut bad = Vec::new();
    for r in PR_CORPUS {
        for s in PR_CORPUS {
            let v = pr_equiv(&parse(&tr, r), &parse(&tr, s))?;
            if v.is_equivalent() != (r == s) {
                bad.push(format!("r = {r}, s = {s}"));
            }
        }
    }
    Ok(Finding::verdict(bad.is_empty(), if bad.is_empty() { "16 pairs agree with r = s".to_string() } else { bad.join("; ") }))
}

fn pr_variable(f: &Field) -> CheckResult {
    let tr = ring(f, &["t"]);
    let mut ids = Vec::new();
    for r in PR_CORPUS {
        let spec = construct(f, Family::Pr { r: parse(&tr, r) })?;
        match certify_variable_kt(spec.hypersurface.as_ref().unwrap())? {
            VariableCertificate::Variable { checks, .. } => ids.extend(checks),
            VariableCertificate::Inconclusive { reason } => {
                return Ok(Finding::verdict(false, format!("r = {r}: {reason}")))
            }
        }
    }
    Ok(Finding::identities(&ids))
}

fn nonequiv_closed(f: &Field) -> CheckResult {
    let mut ids = closedness(f, Family::NonEquivPair { which: PairMember::P })?;
    ids.extend(closedness(f, Family::NonEquivPair { which: PairMember::Q })?);
    Ok(Finding::identities(&ids))
}

fn fibred_closed(f: &Field) -> CheckResult {
    let tx = ring(f, &["t", "x"]);
    let family = Family::Fibred { n: 2, m: 1, mu: f.one(), q: parse(&tx, "x + t") };
    Ok(Finding::identities(&closedness(f, family)?))
}

fn fibred_normal(f: &Field) -> CheckResult {
    let st = ring(f, &["s", "t"]);
    let mut cases = vec![["s", "1", "1 + s*t"], ["3*s", "1", "1 + 3*s*t"], ["s", "1 + s*t", "1"]];
    if f.characteristic() != 2 {
        cases.push(["2 + s + s*t + t", "2 + 2*t", "(1 + s*t + t)/2"]);
    }
    let mut ids = Vec::new();
    let mut forms = Vec::new();
    for [c, a, b] in cases {
        let nf = normalize_fibred(&parse(&st, a), &parse(&st, b), &parse(&st, c))?;
        forms.push((nf.p.clone(), nf.q.clone()));
        ids.extend(nf.checks);
    }
    Ok(Finding::identities(&ids).data(forms))
}

fn small_degree_rho(f: &Field) -> CheckResult {
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for l in [1, 2, 3, -1, 5] {
        let lambda = f.from_i64(l);
        if lambda.is_zero() || seen.contains(&lambda) {
            continue;
        }
        seen.push(lambda.clone());
        let spec = construct(f, Family::RhoLambda { lambda: lambda.clone() })?;
        match small_degree_classify(&spec)? {
            Classification::EquivalentToRhoLambda { lambda: got, .. } if got.value == lambda => {}
            other => bad.push(format!("lambda = {}: {}", f.format_value(&lambda), serde_json::to_string(&other).unwrap())),
        }
    }
    Ok(Finding::verdict(bad.is_empty(), if bad.is_empty() { format!("{} values of lambda recovered", seen.len()) } else { bad.join("; ") }))
}

fn small_degree_subring(f: &Field) -> CheckResult {
    let st = ring(f, &["s", "t"]);
    let comps = ["s*t + 1", "s*t - 1", "s^2", "t^2"].map(|e| parse(&st, e));
    match classify_components(&comps)? {
        Classification::Rejected { certificate: Some(cert), reason } => {
            let mut finding = Finding::identities(&cert.memberships);
            finding.detail = format!("{reason}; {}", finding.detail);
            Ok(finding.data(cert))
        }
        other => Ok(Finding::verdict(false, serde_json::to_string(&other).unwrap())),
    }
}

fn plane(f: &Field) -> RingRef {
    ring(f, &["x", "y"])
}

fn jac_generators(f: &Field) -> CheckResult {
    let r = plane(f);
    let xr = ring(f, &["x"]);
    let (x, y) = (Poly::var_at(&r, 0), Poly::var_at(&r, 1));
    let mut rng = rng();
    let mut maps = vec![(y.clone(), x.clone())];
    for _ in 0..10 {
        let p = random_univariate(&mut rng, &xr, 4).to_ring(&r)?;
        maps.push((x.clone(), y.add(&p)));
    }
    let mut ids = Vec::new();
    for (a, b) in &maps {
        match jac_extension_decide(a, b)? {
            ExtensionDecision::Extends { lift, .. } => ids.extend(lift.checks),
            other => return Ok(Finding::verdict(false, format!("({a}, {b}): {}", serde_json::to_string(&other).unwrap()))),
        }
    }
    Ok(Finding::identities(&ids))
}

fn jac_scaling(f: &Field) -> CheckResult {
    let xi = f.from_i64(2);
    if xi.is_zero() || xi.is_one() || xi == f.from_i64(-1) {
        return Ok(Finding::skipped("2 is 0 or a unit of square 1 in this field"));
    }
    let r = plane(f);
    let (x, y) = (Poly::var_at(&r, 0), Poly::var_at(&r, 1));
    let stretched = jac_extension_decide(&x.scale(&xi), &y)?;
    let blocked = matches!(&stretched, ExtensionDecision::DoesNotExtend { jacobian } if jacobian.text == "2");
    let balanced = jac_extension_decide(&x.scale(&xi), &y.scale(&xi.inv().unwrap()))?;
    let lifted = matches!(&balanced, ExtensionDecision::Extends { lift, .. } if lift.verified());
    Ok(Finding::verdict(
        blocked && lifted,
        format!("(2x, y): {}; (2x, y/2): {}", outcome_name(&stretched), outcome_name(&balanced)),
    ))
}

fn outcome_name(d: &ExtensionDecision) -> &'static str {
    match d {
        ExtensionDecision::Extends { .. } => "Extends",
        ExtensionDecision::DoesNotExtend { .. } => "DoesNotExtend",
        ExtensionDecision::NotAnAutomorphism { .. } => "NotAnAutomorphism",
    }
}

/// A random word of length at most 6 over every generator kind.
pub fn random_word(rng: &mut ChaCha8Rng, f: &Field) -> AutomorphismWord {
    let us = univariate(f);
    let value = |rng: &mut ChaCha8Rng| f.from_i64(rng.gen_range(-5..=5));
    let unit = |rng: &mut ChaCha8Rng| nonzero(f, &[rng.gen_range(1..=5), 1]);
    let len = rng.gen_range(0..=6);
    let factors = (0..len)
        .map(|_| match rng.gen_range(0..5) {
            0 => Generator::Swap,
            1 => Generator::Triangular(random_univariate(rng, &us, 3)),
            2 => Generator::Diagonal(unit(rng)),
            3 => Generator::Translation(value(rng), value(rng)),
            _ => loop {
                let m = [[value(rng), value(rng)], [value(rng), value(rng)]];
                if !m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])).is_zero() {
                    break Generator::AffineLinear(m);
                }
            },
        })
        .collect();
    AutomorphismWord::new(f, factors)
}

fn tame_words(f: &Field) -> CheckResult {
    let r = plane(f);
    let mut rng = rng();
    let mut bad = Vec::new();
    for _ in 0..50 {
        let w = random_word(&mut rng, f);
        let [a, b] = w.components(&r);
        let dec = tame_decompose(&a, &b)?;
        if !dec.recomposes_to(&a, &b) {
            bad.push(format!("{w}"));
        }
    }
    Ok(Finding::verdict(bad.is_empty(), if bad.is_empty() { "50 words recompose".to_string() } else { bad.join("; ") }))
}

/// Random element of `k[t,u,x,y]` with at most 6 terms of degree at most 3
/// in each variable.
pub fn random_tuxy(rng: &mut ChaCha8Rng, r: &RingRef) -> Poly {
    let terms = rng.gen_range(1..=6);
    let mut p = Poly::zero(r);
    for _ in 0..terms {
        let m = Monomial::new((0..r.nvars()).map(|_| rng.gen_range(0..=3)).collect());
        p = p.add(&Poly::term(r, m, r.field().from_i64(rng.gen_range(-9..=9))));
    }
    p
}

fn key_forms(f: &Field) -> CheckResult {
    let r = sl2_ring(f);
    let h = parse(&r, "x*y - 1");
    let t = Poly::var_at(&r, 0);
    let u = Poly::var_at(&r, 1);
    let mut rng = rng();
    let mut bad = Vec::new();
    for i in 0..100 {
        let n = 1 + (i % 2) as u32;
        let f0 = random_tuxy(&mut rng, &r);
        let nf = key_normal_form(&f0, n, &h)?;
        let low = nf.tail.iter().all(|c| c.degree_in(0) < Degree::Finite(n));
        let rel = t.pow(n).mul(&u).sub(&h);
        let ideal = IdealBasis::with_default_order(&r, vec![rel])?;
        let same = ideal_membership(&nf.recompose().sub(&f0), &ideal)?.is_member();
        if !(low && same) {
            bad.push(format!("n = {n}, f = {f0}"));
        }
    }
    Ok(Finding::verdict(bad.is_empty(), if bad.is_empty() { "100 elements".to_string() } else { bad.join("; ") }))
}

fn key_preserved(f: &Field) -> CheckResult {
    let r = plane(f);
    let sl2 = sl2_ring(f);
    let h = parse(&sl2, "x*y - 1");
    let mut bad = Vec::new();
    for (a, b) in [("y", "x"), ("x", "y + x^2"), ("x", "y + x^3 - 2*x")] {
        let ExtensionDecision::Extends { lift, .. } = jac_extension_decide(&parse(&r, a), &parse(&r, b))? else {
            bad.push(format!("({a}, {b}) does not lift"));
            continue;
        };
        if !preserved_subring_check(&lift.image_polys, 1, &h)?.holds() {
            bad.push(format!("lift of ({a}, {b}): {}", lift.images.join(", ")));
        }
    }
    Ok(Finding::verdict(bad.is_empty(), if bad.is_empty() { "3 lifts".to_string() } else { bad.join("; ") }))
}

/// Exponents `q` used in characteristic `p`: 2 and 3 unless divisible by `p`.
fn charp_exponents(p: u32) -> Vec<u32> {
    [2, 3].into_iter().filter(|q| q % p != 0).collect()
}

fn small_char(f: &Field, max: u32) -> Result<u32, Finding> {
    let p = f.characteristic();
    if p > max {
        return Err(Finding::skipped(format!("runs for characteristic p <= {max}")));
    }
    Ok(p)
}

fn charp_lines(f: &Field) -> CheckResult {
    let p = match small_char(f, CHARP_EXHAUSTIVE_MAX) {
        Ok(p) => p,
        Err(s) => return Ok(s),
    };
    let units: Vec<FieldValue> = f.elements().unwrap_or_default().into_iter().filter(|v| !v.is_zero()).collect();
    let mut ids = Vec::new();
    for q in charp_exponents(p) {
        for a in &units {
            for b in &units {
                let spec = construct(f, Family::CharPLine { p, q, a: a.clone(), b: b.clone() })?;
                let mut c = spec.verify_hypersurface()?.expect("char-p lines carry an image equation");
                c.label = format!("q = {q}, a = {}, b = {}: {}", f.format_value(a), f.format_value(b), c.label);
                ids.push(c);
            }
        }
    }
    Ok(Finding::identities(&ids))
}

fn charp_line_closed(f: &Field) -> CheckResult {
    let p = match small_char(f, CHARP_EXHAUSTIVE_MAX) {
        Ok(p) => p,
        Err(s) => return Ok(s),
    };
    let mut ids = Vec::new();
    for q in charp_exponents(p) {
        ids.extend(closedness(f, Family::CharPLine { p, q, a: f.one(), b: f.one() })?);
    }
    Ok(Finding::identities(&ids))
}

fn charp_kt(f: &Field) -> CheckResult {
    let p = match small_char(f, CHARP_EXHAUSTIVE_MAX) {
        Ok(p) => p,
        Err(s) => return Ok(s),
    };
    let mut ids = Vec::new();
    for q in charp_exponents(p) {
        ids.push(formof_a1_witness(p, q, &f.one(), &f.one())?.check);
    }
    Ok(Finding::identities(&ids))
}

fn charp_not_var(f: &Field) -> CheckResult {
    let p = match small_char(f, 3) {
        Ok(p) => p,
        Err(s) => return Ok(s),
    };
    let mut ids = Vec::new();
    for q in charp_exponents(p) {
        ids.extend(not_var_kt_maps(f, p, q)?.checks()?);
    }
    Ok(Finding::identities(&ids))
}

fn charp_hypersurface(f: &Field) -> CheckResult {
    let p = match small_char(f, CHARP_EXHAUSTIVE_MAX) {
        Ok(p) => p,
        Err(s) => return Ok(s),
    };
    let mut ids = Vec::new();
    for q in charp_exponents(p) {
        ids.extend(closedness(f, Family::CharPHypersurface { p, q, a: f.one(), n: 2 })?);
    }
    Ok(Finding::identities(&ids))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = CHECKS.iter().map(|c| c.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), CHECKS.len());
    }

    #[test]
    fn exit_code_follows_statuses() {
        let rec = |s| Record::new("x", "y", s, "");
        assert_eq!(exit_code(&[rec(Status::Pass), rec(Status::Skipped)]), 0);
        assert_eq!(exit_code(&[rec(Status::Pass), rec(Status::Inconclusive)]), 3);
        assert_eq!(exit_code(&[rec(Status::Inconclusive), rec(Status::Fail)]), 2);
    }

    #[test]
    fn scopes() {
        let q = Field::Rationals;
        let f2 = Field::prime(2).unwrap();
        assert!(Scope::PositiveChar.skip_reason(&q).is_some());
        assert!(Scope::CharZero.skip_reason(&f2).is_some());
        assert!(Scope::CharNot2.skip_reason(&f2).is_some());
        assert!(Scope::Any.skip_reason(&f2).is_none());
    }
}
