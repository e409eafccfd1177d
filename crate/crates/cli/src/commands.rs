//! Single-shot commands: equivalence deciders, constructors and lifts.
//! Each returns a one-record report and the process exit code.

use std::time::Instant;

use quadric_core::embeddings::{
    builtin_certificate, certify_closed, construct, ring, EmbeddingError, EmbeddingSpec, Family, PairMember,
};
use quadric_core::equivalence::{
    jac_extension_decide, nu_extension, nu_equiv, pr_equiv, EquivalenceError, ExtensionDecision, Outcome, Witness,
};
use quadric_core::field::{Field, FieldValue};
use quadric_core::poly::{AlgebraError, Poly, RingRef};
use serde_json::json;

use crate::exit;
use crate::report::{Record, Report, Status};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unparsable input or violated parameter constraints.
    Usage(String),
    Io(String),
    /// A construction or check failed to verify.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io(_) => exit::IO,
            CliError::Failed(_) => exit::FAILED,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Failed(m) => m,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e.to_string())
    }
}

impl From<EmbeddingError> for CliError {
    fn from(e: EmbeddingError) -> CliError {
        match e {
            EmbeddingError::ParameterConstraintViolated { .. } | EmbeddingError::Algebra(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<EquivalenceError> for CliError {
    fn from(e: EquivalenceError) -> CliError {
        match e {
            EquivalenceError::UnsupportedField(_) | EquivalenceError::InvalidInput(_) | EquivalenceError::Algebra(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

/// `Q` or `Fp:<prime>`.
pub fn parse_field(src: &str) -> Result<Field, CliError> {
    let f: Field = src.parse().map_err(|e| CliError::Usage(format!("--field {src}: {e}")))?;
    if let Field::Fractions { .. } = f {
        return Err(CliError::Usage(format!("--field {src}: only Q and Fp:<prime> are accepted")));
    }
    Ok(f)
}

/// Parse `src` in `r`, pointing at the offending position on failure.
pub fn parse_poly(r: &RingRef, src: &str, flag: &str) -> Result<Poly, CliError> {
    Poly::parse(r, src).map_err(|e| {
        let position = match &e {
            AlgebraError::UnknownVariable { position, .. }
            | AlgebraError::SyntaxError { position, .. }
            | AlgebraError::CoefficientError { position, .. } => Some(*position),
            _ => None,
        };
        let mut msg = format!("--{flag}: {e} (ring {})", r.vars().join(", "));
        if let Some(p) = position {
            msg.push_str(&format!("\n  {src}\n  {}^", " ".repeat(src[..p.min(src.len())].chars().count())));
        }
        CliError::Usage(msg)
    })
}

pub fn parse_scalar(field: &Field, src: &str, flag: &str) -> Result<FieldValue, CliError> {
    let r = ring(field, &["t"]);
    parse_poly(&r, src, flag)?
        .constant_value()
        .ok_or_else(|| CliError::Usage(format!("--{flag}: {src} is not a constant")))
}

fn parse_u32(src: &str, flag: &str) -> Result<u32, CliError> {
    src.trim().parse().map_err(|_| CliError::Usage(format!("--{flag}: {src} is not a nonnegative integer")))
}

fn json_of(v: &impl serde::Serialize) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

pub enum EquivKind<'a> {
    Nu { p: &'a str, q: &'a str },
    Pr { r: &'a str, s: &'a str },
    Jac { f: &'a str, g: &'a str },
}

fn outcome_status(o: &Outcome) -> (Status, u8) {
    match o {
        Outcome::Equivalent(_) => (Status::Pass, exit::OK),
        Outcome::NotEquivalent(_) => (Status::Fail, exit::NOT),
        Outcome::Inconclusive(_) => (Status::Inconclusive, exit::INCONCLUSIVE),
    }
}

/// The plane ring for Jacobian inputs: `s, t`, or `x, y` when the inputs use
/// those names.
fn plane_ring(field: &Field, f: &str, g: &str) -> RingRef {
    let st = ring(field, &["s", "t"]);
    if Poly::parse(&st, f).is_ok() && Poly::parse(&st, g).is_ok() {
        return st;
    }
    let xy = ring(field, &["x", "y"]);
    if Poly::parse(&xy, f).is_ok() && Poly::parse(&xy, g).is_ok() {
        return xy;
    }
    st
}

pub fn equiv(field: &Field, kind: EquivKind, command: Vec<String>) -> Result<(Report, u8), CliError> {
    let start = Instant::now();
    let mut report = Report::new(field.to_string(), command);
    let (record, code) = match kind {
        EquivKind::Nu { p, q } => {
            let tr = ring(field, &["t"]);
            let (pp, qq) = (parse_poly(&tr, p, "p")?, parse_poly(&tr, q, "q")?);
            let v = nu_equiv(&pp, &qq)?;
            let (status, code) = outcome_status(&v.outcome);
            let mut data = json_of(&v);
            let detail = match &v.outcome {
                Outcome::Equivalent(Witness::ScaleShift { solutions }) => {
                    let mut exts = Vec::new();
                    for (l, m) in solutions {
                        let ext = nu_extension(&pp, &qq, &l.value, &m.value)?;
                        if !ext.verified() {
                            return Err(CliError::Failed(format!("extension for ({}, {}) fails to verify", l.text, m.text)));
                        }
                        exts.push(json_of(&ext));
                    }
                    data["extensions"] = serde_json::Value::Array(exts);
                    let sols: Vec<String> = solutions.iter().map(|(l, m)| format!("({}, {})", l.text, m.text)).collect();
                    format!("Equivalent: (lambda, mu) in {{{}}}", sols.join(", "))
                }
                Outcome::NotEquivalent(o) => format!("NotEquivalent: {}", serde_json::to_string(o).unwrap()),
                Outcome::Inconclusive(m) => format!("Inconclusive: {m}"),
                Outcome::Equivalent(w) => format!("Equivalent: {}", serde_json::to_string(w).unwrap()),
            };
            let detail = with_flags(detail, &v.flags);
            (Record::new("equiv-nu", format!("nu_p and nu_q are equivalent for p = {pp}, q = {qq}"), status, detail).with_data(data), code)
        }
        EquivKind::Pr { r, s } => {
            let tr = ring(field, &["t"]);
            let (rr, ss) = (parse_poly(&tr, r, "r")?, parse_poly(&tr, s, "s")?);
            let v = pr_equiv(&rr, &ss)?;
            let (status, code) = outcome_status(&v.outcome);
            let detail = match &v.outcome {
                Outcome::Equivalent(w) => format!("Equivalent: {}", serde_json::to_string(w).unwrap()),
                Outcome::NotEquivalent(o) => format!("NotEquivalent: {}", serde_json::to_string(o).unwrap()),
                Outcome::Inconclusive(m) => format!("Inconclusive: {m}"),
            };
            (Record::new("equiv-pr", format!("P_r and P_s are equivalent for r = {rr}, s = {ss}"), status, detail).with_data(json_of(&v)), code)
        }
        EquivKind::Jac { f, g } => {
            let (rec, code) = jac_record(field, f, g)?;
            (rec, code)
        }
    };
    report.records.push(record.timed(start.elapsed()));
    Ok((report, code))
}

fn with_flags(detail: String, flags: &[String]) -> String {
    if flags.is_empty() {
        detail
    } else {
        format!("{detail} [{}]", flags.join("; "))
    }
}

fn jac_record(field: &Field, f: &str, g: &str) -> Result<(Record, u8), CliError> {
    let r = plane_ring(field, f, g);
    let (ff, gg) = (parse_poly(&r, f, "f")?, parse_poly(&r, g, "g")?);
    let d = jac_extension_decide(&ff, &gg)?;
    let anchor = format!("({ff}, {gg}) extends to an automorphism of SL2 through nu");
    let (status, code, detail) = match &d {
        ExtensionDecision::Extends { word, lift } => (
            Status::Pass,
            exit::OK,
            format!("Extends: word {}; lift (t, u, x, y) -> ({})", word, lift.images.join(", ")),
        ),
        ExtensionDecision::DoesNotExtend { jacobian } => {
            (Status::Fail, exit::NOT, format!("DoesNotExtend: J = {}", jacobian.text))
        }
        ExtensionDecision::NotAnAutomorphism { reason } => (Status::Fail, exit::NOT, format!("NotAnAutomorphism: {reason}")),
    };
    Ok((Record::new("equiv-jac", anchor, status, detail).with_data(json_of(&d)), code))
}

/// `lift --f --g`: like `equiv jac`, but the lift and its inverse are the
/// main output.
pub fn lift(field: &Field, f: &str, g: &str, command: Vec<String>) -> Result<(Report, u8), CliError> {
    let start = Instant::now();
    let (mut rec, code) = jac_record(field, f, g)?;
    rec.name = "lift".into();
    if let Some(data) = &rec.data {
        if let Some(inv) = data.pointer("/lift/inverse").and_then(|v| v.as_array()) {
            let inv: Vec<&str> = inv.iter().filter_map(|v| v.as_str()).collect();
            rec.detail = format!("{}; inverse ({})", rec.detail, inv.join(", "));
        }
    }
    let mut report = Report::new(field.to_string(), command);
    report.records.push(rec.timed(start.elapsed()));
    Ok((report, code))
}

/// Family parameters as given on the command line.
#[derive(Debug, Default, Clone)]
pub struct FamilyArgs {
    pub lambda: Option<String>,
    pub p: Option<String>,
    pub q: Option<String>,
    pub r: Option<String>,
    pub a: Option<String>,
    pub b: Option<String>,
    pub n: Option<String>,
    pub m: Option<String>,
    pub mu: Option<String>,
    pub which: Option<String>,
}

fn need<'a>(v: &'a Option<String>, flag: &str, tag: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::Usage(format!("{tag} needs --{flag}")))
}

/// Default field for a family: `Fp:p` for the characteristic-p families,
/// `Q` otherwise.
pub fn default_field(tag: &str, args: &FamilyArgs) -> Result<Field, CliError> {
    if matches!(tag, "charp-line" | "charp-hypersurface" | "not-var-kt") {
        let p = parse_u32(need(&args.p, "p", tag)?, "p")?;
        return Field::prime(p as u64).map_err(|e| CliError::Usage(format!("--p: {e}")));
    }
    Ok(Field::Rationals)
}

pub fn family(field: &Field, tag: &str, a: &FamilyArgs) -> Result<Family, CliError> {
    let poly = |v: &Option<String>, flag: &str, vars: &[&str]| -> Result<Poly, CliError> {
        parse_poly(&ring(field, vars), need(v, flag, tag)?, flag)
    };
    let scalar = |v: &Option<String>, flag: &str| parse_scalar(field, need(v, flag, tag)?, flag);
    let int = |v: &Option<String>, flag: &str| parse_u32(need(v, flag, tag)?, flag);
    Ok(match tag {
        "nu-p" => Family::NuP { p: poly(&a.p, "p", &["t"])? },
        "rho-lambda" => Family::RhoLambda { lambda: scalar(&a.lambda, "lambda")? },
        "pr" => Family::Pr { r: poly(&a.r, "r", &["t"])? },
        "fibred" => Family::Fibred {
            n: int(&a.n, "n")?,
            m: int(&a.m, "m")?,
            mu: scalar(&a.mu, "mu")?,
            q: poly(&a.q, "q", &["t", "x"])?,
        },
        "nonequiv-pair" => Family::NonEquivPair {
            which: match a.which.as_deref().unwrap_or("P") {
                "P" | "p" => PairMember::P,
                "Q" | "q" => PairMember::Q,
                other => return Err(CliError::Usage(format!("--which {other}: expected P or Q"))),
            },
        },
        "charp-line" => Family::CharPLine { p: int(&a.p, "p")?, q: int(&a.q, "q")?, a: scalar(&a.a, "a")?, b: scalar(&a.b, "b")? },
        "charp-hypersurface" => Family::CharPHypersurface {
            p: int(&a.p, "p")?,
            q: int(&a.q, "q")?,
            a: scalar(&a.a, "a")?,
            n: a.n.as_deref().map_or(Ok(1), |s| parse_u32(s, "n"))? as usize,
        },
        "not-var-kt" => Family::NotVarKt { p: int(&a.p, "p")?, q: int(&a.q, "q")? },
        "surface-e" => Family::SurfaceE,
        "shastri-a3" => Family::ShastriA3,
        "shastri-sl2" => Family::ShastriSl2,
        other => {
            return Err(CliError::Usage(format!("unknown family {other:?}; known: {}", Family::TAGS.join(", "))))
        }
    })
}

fn describe(spec: &EmbeddingSpec) -> Vec<(String, String)> {
    spec.target.vars().iter().zip(&spec.components).map(|(v, c)| (v.clone(), c.to_string())).collect()
}

pub fn construct_cmd(field: &Field, tag: &str, args: &FamilyArgs, command: Vec<String>) -> Result<(Report, u8), CliError> {
    let start = Instant::now();
    let fam = family(field, tag, args)?;
    let spec = construct(field, fam)?;
    let mut residuals = Vec::new();
    if let Ok(c) = spec.verify_on_quadric() {
        residuals.push(c);
    }
    residuals.extend(spec.verify_hypersurface()?);
    let closed = builtin_certificate(&spec).and_then(|w| certify_closed(&spec, w));
    let comps = describe(&spec);
    let shown: Vec<String> = comps.iter().map(|(v, c)| format!("{v} = {c}")).collect();
    let mut detail = format!("{}; ", shown.join(", "));
    let res: Vec<String> = residuals.iter().map(|c| format!("{}: residual {}", c.label, c.residual)).collect();
    detail.push_str(&if res.is_empty() { "no ambient relation".to_string() } else { res.join("; ") });
    match &closed {
        Ok(c) => detail.push_str(&format!("; closed ({} certificate)", c.kind)),
        Err(e) => detail.push_str(&format!("; closedness not certified: {e}")),
    }
    let ok = residuals.iter().all(|c| c.holds);
    let data = json!({
        "family": tag,
        "source": spec.source.vars(),
        "components": comps.iter().map(|(v, c)| json!({"variable": v, "image": c})).collect::<Vec<_>>(),
        "matrix": spec.matrix().map(|m| m.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        "residuals": residuals,
        "closedness": closed.as_ref().ok(),
    });
    let status = if ok { Status::Pass } else { Status::Fail };
    let rec = Record::new(format!("construct-{tag}"), format!("{tag} components satisfy the ambient and image equations"), status, detail)
        .with_data(data)
        .timed(start.elapsed());
    let mut report = Report::new(field.to_string(), command);
    report.records.push(rec);
    Ok((report, if ok { exit::OK } else { exit::FAILED }))
}
