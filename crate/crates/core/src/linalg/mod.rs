//! Exact linear algebra: small dense matrices over ℚ, word-size prime
//! fields, and sparse integer nullspaces.

pub mod dense;
pub mod sparse;
pub mod zp;

pub use dense::QMatrix;
pub use sparse::{NullspaceMethod, SparseMatrix};
