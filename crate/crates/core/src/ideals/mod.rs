//! Monomial orders, multivariate division, Gröbner bases with cofactor
//! tracking, and normal forms in the quotient rings used by the embedding
//! constructions.

mod groebner;
mod order;
mod quotient;

use thiserror::Error;

use crate::poly::AlgebraError;

pub use groebner::{
    buchberger, divide, ideal_membership, membership_certificate, Division, GroebnerBasis, GroebnerCertificate,
    IdealBasis, Membership, MembershipCertificate, DEFAULT_SPAIR_BUDGET,
};
pub use order::{MonomialOrder, OrderKind, DEFAULT_PRECEDENCE};
pub use quotient::{
    key_normal_form, key_relation, preserved_subring_check, KeyHypothesis, KeyNormalForm, PreservationReport,
    Sl2Quotient,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("S-pair budget of {budget} exhausted")]
    BudgetExceeded { budget: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("ring lacks variable {0:?}")]
    MissingVariable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
