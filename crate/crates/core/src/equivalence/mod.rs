//! Equivalence deciders for the curve and surface families, automorphism
//! words of the plane and their lifts to `SL2`.

mod fibred;
mod lift;
mod nu;
mod pr;
mod word;

use serde::Serialize;
use thiserror::Error;

use crate::embeddings::EmbeddingError;
use crate::field::{Field, FieldValue};
use crate::ideals::IdealError;
use crate::poly::AlgebraError;

pub use fibred::{
    certify_variable_kt, classify_components, normalize_fibred, small_degree_classify, Classification, FibredNormalForm, Sl2Auto,
    SubringCertificate, VariableCertificate,
};
pub use lift::{jac_extension_decide, lift_word, ExtensionDecision, Sl2AutoSpec};
pub use nu::{nu_equiv, nu_extension, NuExtension, NU_EXHAUSTIVE_LIMIT};
pub use pr::{pr_equiv, PrCase};
pub use word::{
    tame_decompose, tame_decompose_checked, univariate, word_jacobian, AutomorphismWord, Generator, TameDecomposition,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("unsupported field {0}: only Q and F_p are handled")]
    UnsupportedField(String),
    #[error("witness does not satisfy the functional equation: {0}")]
    WitnessInvalid(String),
    #[error("degree reduction stalls at ({f}, {g})")]
    DecompositionFailed { f: String, g: String },
    #[error("factor cannot be lifted: {0}")]
    NotLiftable(String),
    #[error("a b - t c = {0}, not 1")]
    NotUnimodular(String),
    #[error("normalization fails: {0}")]
    NormalizationFails(String),
    #[error("components must have degree at most 2, found {0}")]
    DegreeTooHigh(u32),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// A field element together with its canonical printed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Scalar {
    #[serde(skip)]
    pub value: FieldValue,
    pub text: String,
}

impl Scalar {
    pub fn new(field: &Field, value: FieldValue) -> Scalar {
        Scalar { text: field.format_value(&value), value }
    }
}

/// Exact data certifying an equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Witness {
    /// All pairs with `p(t) = lambda q(lambda t + mu)`.
    ScaleShift { solutions: Vec<(Scalar, Scalar)> },
    /// `S_r(a t, x) = mu^2 S_s(t, x/mu + tau(t))`.
    FibreMatch { case: PrCase, a: Scalar, mu: Scalar, tau: String },
}

/// Machine-checked reasons for non-equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Obstruction {
    DegreeMismatch { left: i64, right: i64 },
    /// No `lambda` in the field solves `lambda^exponent = ratio`.
    NoScaleCandidate { ratio: String, exponent: u32 },
    /// Every candidate pair was tried and failed by expansion.
    CandidatesExhausted { candidates: Vec<(String, String)> },
    /// Exhaustive search over `k^* x k`.
    SearchExhausted { pairs_tried: u64 },
    /// Both cases of the fibre analysis fail; residuals of the full identity.
    CaseAnalysis { residuals: Vec<(PrCase, String)> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "data")]
pub enum Outcome {
    Equivalent(Witness),
    NotEquivalent(Obstruction),
    Inconclusive(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    #[serde(flatten)]
    pub outcome: Outcome,
    /// Caveats that do not change the outcome.
    pub flags: Vec<String>,
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self.outcome, Outcome::Equivalent(_))
    }

    pub fn is_not_equivalent(&self) -> bool {
        matches!(self.outcome, Outcome::NotEquivalent(_))
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self.outcome, Outcome::Inconclusive(_))
    }

    pub(crate) fn of(outcome: Outcome) -> EquivalenceVerdict {
        EquivalenceVerdict { outcome, flags: Vec::new() }
    }
}
