//! Genericity of a polynomial with respect to a coordinate direction.
//!
//! `P` is generic in `Xᵢ` when projecting `V(P)` along `Xᵢ` has finite
//! fibers. Writing `P = a₀Xᵢᵐ + … + aₘ` with `aₖ` free of `Xᵢ`, this holds
//! exactly when `a₀,…,aₘ` generate the unit ideal, which is decided here
//! with a Gröbner basis.

pub mod groebner;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{coprime_certificate, gcd, rat, LinearChange, Polynomial, Rational};

pub use groebner::{groebner_basis, groebner_basis_capped, DEFAULT_DEGREE_CAP};

/// The ideal of coefficients of `P` as a polynomial in one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffIdeal {
    pub variable: usize,
    /// `aₖ` listed from the leading power down; zero coefficients dropped.
    pub generators: Vec<Polynomial>,
}

impl CoeffIdeal {
    pub fn of(p: &Polynomial, variable: usize) -> Self {
        let mut generators: Vec<Polynomial> = p
            .coefficients_in(variable)
            .into_iter()
            .filter(|c| !c.is_zero())
            .collect();
        generators.reverse();
        CoeffIdeal {
            variable,
            generators,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A nonzero constant in the ideal.
    Unit(Rational),
    /// The reduced Gröbner basis of a proper ideal.
    Basis(Vec<Polynomial>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    pub variable: usize,
    pub is_generic: bool,
    pub witness: Witness,
    pub shear_applied: Option<LinearChange>,
}

/// Decides whether `p` is generic in `variable`.
pub fn is_generic(p: &Polynomial, variable: usize) -> Result<GenericityReport> {
    is_generic_capped(p, variable, DEFAULT_DEGREE_CAP)
}

pub fn is_generic_capped(p: &Polynomial, variable: usize, cap: u32) -> Result<GenericityReport> {
    if variable >= p.nvars() {
        return Err(Error::VariableOutOfRange {
            index: variable,
            arity: p.nvars(),
        });
    }
    if p.is_constant() {
        return Err(Error::ConstantInput);
    }
    if !p.contains_var(variable) {
        return Err(Error::VariableAbsent(variable));
    }
    let ideal = CoeffIdeal::of(p, variable);
    let report = |is_generic, witness| GenericityReport {
        variable,
        is_generic,
        witness,
        shear_applied: None,
    };
    if let Some(c) = ideal.generators.iter().find_map(|a| a.constant_value()) {
        return Ok(report(true, Witness::Unit(c)));
    }
    let g = groebner_basis_capped(&ideal.generators, cap)?;
    if g.len() == 1 && g[0].is_one() {
        Ok(report(true, Witness::Unit(rat(1))))
    } else {
        Ok(report(false, Witness::Basis(g)))
    }
}

/// Whether the top-degree form of `p` contains `X_variable^d`.
fn has_pure_top_power(p: &Polynomial, variable: usize) -> bool {
    let d = p.total_degree().unwrap_or(0) as usize;
    let coeffs = p.coefficients_in(variable);
    coeffs.len() == d + 1 && coeffs[d].is_constant()
}

const SHEAR_RETRIES: usize = 64;

/// Shears `p` until it is generic in `target`.
///
/// Returns `(apply_change(p, t), t)` with `t: Xⱼ ↦ Xⱼ + cⱼ·X_target`; the
/// factors of the result map back to factors of `p` under `t.inverse()`.
/// The identity is returned when `X_target^d` already occurs in `p`.
pub fn make_generic(
    p: &Polynomial,
    target: usize,
    seed: u64,
) -> Result<(Polynomial, LinearChange)> {
    let n = p.nvars();
    if target >= n {
        return Err(Error::VariableOutOfRange {
            index: target,
            arity: n,
        });
    }
    if p.is_constant() {
        return Err(Error::ConstantInput);
    }
    if has_pure_top_power(p, target) {
        return Ok((p.clone(), LinearChange::identity(n)));
    }
    let top = p.leading_form();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..SHEAR_RETRIES {
        let bound: i64 = 2i64 << attempt.min(40);
        let mut c: Vec<Rational> = (0..n)
            .map(|_| rat(rng.random_range(-bound..=bound)))
            .collect();
        c[target] = rat(1);
        // the coefficient of X_target^d after the shear is P_d(c)
        if top.evaluate(&c)?.is_zero() {
            continue;
        }
        c[target] = Rational::zero();
        let t = LinearChange::shear(target, &c);
        let q = p.apply_change(&t)?;
        debug_assert!(has_pure_top_power(&q, target));
        return Ok((q, t));
    }
    Err(Error::Internal(format!(
        "no generic shear found in {SHEAR_RETRIES} attempts"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reducedness {
    Reduced,
    /// `gcd(P, ∂P)`: every irreducible factor of it is repeated in `P`.
    Repeated(Polynomial),
}

/// `gcd(p, ∂p/∂X_variable)` is constant, for `p` generic in `variable`.
pub fn check_reduced(p: &Polynomial, variable: usize) -> Result<Reducedness> {
    let report = is_generic(p, variable)?;
    if !report.is_generic {
        return Err(Error::NotGeneric(variable));
    }
    reducedness(p, variable)
}

fn reducedness(p: &Polynomial, variable: usize) -> Result<Reducedness> {
    let d = p.derivative(variable);
    if coprime_certificate(p, &d) {
        return Ok(Reducedness::Reduced);
    }
    let g = gcd(p, &d)?;
    if g.is_constant() {
        Ok(Reducedness::Reduced)
    } else {
        Ok(Reducedness::Repeated(g))
    }
}

/// A polynomial made ready for the factor pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prepared {
    pub original: Polynomial,
    /// `original`, sheared if no coordinate direction was generic.
    pub working: Polynomial,
    pub variable: usize,
    pub change: Option<LinearChange>,
}

impl Prepared {
    /// Maps a polynomial in working coordinates back to the caller's.
    pub fn pull_back(&self, q: &Polynomial) -> Result<Polynomial> {
        match &self.change {
            Some(t) => q.apply_change(&t.inverse()),
            None => Ok(q.clone()),
        }
    }
}

/// Picks a generic variable (the first one that works, else a shear toward
/// the first variable) and checks that `p` is reduced.
pub fn prepare(p: &Polynomial) -> Result<Prepared> {
    prepare_seeded(p, 0)
}

pub fn prepare_seeded(p: &Polynomial, seed: u64) -> Result<Prepared> {
    if p.is_constant() {
        return Err(Error::ConstantInput);
    }
    let mut chosen = None;
    for v in 0..p.nvars() {
        match is_generic(p, v) {
            Ok(r) if r.is_generic => {
                chosen = Some(v);
                break;
            }
            Ok(_) | Err(Error::VariableAbsent(_)) | Err(Error::DegreeCapExceeded(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let prepared = match chosen {
        Some(variable) => Prepared {
            original: p.clone(),
            working: p.clone(),
            variable,
            change: None,
        },
        None => {
            let (working, t) = make_generic(p, 0, seed)?;
            Prepared {
                original: p.clone(),
                working,
                variable: 0,
                change: Some(t),
            }
        }
    };
    match reducedness(&prepared.working, prepared.variable)? {
        Reducedness::Reduced => Ok(prepared),
        Reducedness::Repeated(g) => Err(Error::NotReduced {
            witness: prepared.pull_back(&g)?.primitive(),
        }),
    }
}
