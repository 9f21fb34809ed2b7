//! Exact absolute factorization of multivariate polynomials over ℚ.
//!
//! A reduced polynomial `P` with `s` irreducible factors over ℂ admits an
//! `s`-dimensional space of polynomial tuples `(A₁,…,Aₙ)` such that the
//! rational 1-form `Σ Aᵢ/P dXᵢ` is closed, subject to the bounds
//! `multideg(Aᵢ) ≤ multideg(P) − eᵢ`. This crate builds that linear system
//! ([`ruppert`]), computes its nullspace exactly, and recovers the factors
//! by diagonalising multiplication by a generic element of the first
//! component space inside `ℚ[X]/(P)` ([`factor`]).
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! no floating point value ever enters a decision.

pub mod error;
pub mod exec;
pub mod factor;
pub mod genericity;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod ruppert;
pub mod univariate;

pub use error::{Error, Result};
pub use exec::Exec;
pub use factor::{split, FactorizationResult, SplitOptions};
pub use genericity::{is_generic, make_generic, prepare, GenericityReport};
pub use parse::{parse, print, VarTable};
pub use poly::{LinearChange, Monomial, MultiDegree, Polynomial, Rational};
pub use ruppert::{build_system, count_factors, nullspace, RuppertBasis, RuppertSystem};
