//! Exact algebra for embeddings of the affine plane into the quadric
//! threefold `xy = z(z+1)` and into `SL2`: polynomial arithmetic over
//! exact fields, Gröbner bases, embedding families with certificates, and
//! decision procedures for equivalence of embeddings.

pub mod embeddings;
pub mod equivalence;
pub mod field;
pub mod ideals;
pub mod poly;
