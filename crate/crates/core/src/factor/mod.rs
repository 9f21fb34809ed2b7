//! Recovering the absolutely irreducible factors.
//!
//! Let `D = ∂P/∂X` for a generic variable `X`. The `X`-components of the
//! closed-form tuples, taken modulo `P`, span an `s`-dimensional subspace
//! `C` of `ℚ[X]/(P)`, and multiplication by `D` maps `C` isomorphically onto
//! `D·C`. For a component `v`, the map `c ↦ v·c / D` acts diagonally on `C`
//! with rational eigenvalues `λᵢ`, and `Pᵢ = gcd(P, v − λᵢ·D)`.

mod endo;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::genericity::{self, Prepared};
use crate::linalg::QMatrix;
use crate::poly::{gcd, product, rat, LinearChange, Monomial, Polynomial, Rational};
use crate::ruppert::{build_system, nullspace, RuppertBasis};
use crate::univariate::UniPoly;

pub use crate::ruppert::is_absolutely_irreducible;
pub use endo::{build_endo, char_poly, EndoMatrix};

/// Bases of `C` and `D·C` inside `ℚ[X]/(P)`, as normal forms modulo `P`.
#[derive(Clone, Debug)]
pub struct QuotientContext {
    modulus: Polynomial,
    variable: usize,
    derivative: Polynomial,
    /// Representatives in `E` (unreduced first components).
    lifts: Vec<Polynomial>,
    classes: Vec<Polynomial>,
    scaled: Vec<Polynomial>,
}

impl QuotientContext {
    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn variable(&self) -> usize {
        self.variable
    }

    pub fn derivative(&self) -> &Polynomial {
        &self.derivative
    }

    pub fn lifts(&self) -> &[Polynomial] {
        &self.lifts
    }

    pub fn component_classes(&self) -> &[Polynomial] {
        &self.classes
    }

    pub fn scaled_classes(&self) -> &[Polynomial] {
        &self.scaled
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// `Σ cₖ·liftₖ`.
    pub fn element(&self, coeffs: &[Rational]) -> Polynomial {
        let n = self.modulus.nvars();
        self.lifts
            .iter()
            .zip(coeffs)
            .fold(Polynomial::zero(n), |acc, (l, c)| &acc + &l.scale(c))
    }
}

/// Coordinates of `target` in the span of `basis`, compared monomial by
/// monomial. `None` when `target` is outside the span.
pub(crate) fn coordinates(target: &Polynomial, basis: &[Polynomial]) -> Option<Vec<Rational>> {
    let monos = support(basis.iter().chain(std::iter::once(target)));
    let column =
        |p: &Polynomial| -> Vec<Rational> { monos.iter().map(|m| p.coefficient(m)).collect() };
    let cols: Vec<Vec<Rational>> = basis.iter().map(column).collect();
    let mut a = QMatrix::zeros(monos.len(), basis.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            a[(i, j)] = x.clone();
        }
    }
    a.solve(&column(target))
}

fn support<'a>(ps: impl Iterator<Item = &'a Polynomial>) -> Vec<Monomial> {
    let mut monos: Vec<Monomial> = ps
        .flat_map(|p| p.terms().iter().map(|(m, _)| m.clone()))
        .collect();
    monos.sort_unstable_by(|a, b| b.cmp(a));
    monos.dedup();
    monos
}

/// Indices of a maximal linearly independent subfamily, earliest first.
pub(crate) fn independent_subset(ps: &[Polynomial]) -> Vec<usize> {
    let monos = support(ps.iter());
    let mut a = QMatrix::zeros(monos.len(), ps.len());
    for (j, p) in ps.iter().enumerate() {
        for (i, m) in monos.iter().enumerate() {
            a[(i, j)] = p.coefficient(m);
        }
    }
    a.rref()
}

/// Builds both bases for `p`, generic in `variable` and reduced.
pub fn build_quotient(
    p: &Polynomial,
    basis: &RuppertBasis,
    variable: usize,
) -> Result<QuotientContext> {
    let s = basis.dim();
    let derivative = p.derivative(variable);
    let comps = basis.components(variable);
    let reduced: Vec<Polynomial> = comps
        .iter()
        .map(|c| c.normal_form(p))
        .collect::<Result<_>>()?;
    let keep = independent_subset(&reduced);
    if keep.len() != s {
        return Err(Error::DimensionMismatch {
            expected: s,
            found: keep.len(),
        });
    }
    let lifts: Vec<Polynomial> = keep.iter().map(|&k| comps[k].clone()).collect();
    let classes: Vec<Polynomial> = keep.iter().map(|&k| reduced[k].clone()).collect();
    let scaled: Vec<Polynomial> = classes
        .iter()
        .map(|e| (e * &derivative).normal_form(p))
        .collect::<Result<_>>()?;
    let found = independent_subset(&scaled).len();
    if found != s {
        return Err(Error::DimensionMismatch { expected: s, found });
    }
    Ok(QuotientContext {
        modulus: p.clone(),
        variable,
        derivative,
        lifts,
        classes,
        scaled,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitOptions {
    pub seed: u64,
    pub max_retries: usize,
}

impl Default for SplitOptions {
    fn default() -> Self {
        SplitOptions {
            seed: 0,
            max_retries: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationResult {
    /// Number of absolutely irreducible factors.
    pub count: usize,
    /// Primitive factors with rational coefficients, by ascending eigenvalue.
    pub factors: Vec<Polynomial>,
    pub eigenvalues: Vec<Rational>,
    pub char_poly: UniPoly,
    /// The part of `P` not split over ℚ; `1` when every factor is rational.
    pub residual: Polynomial,
    /// `P = unit · ∏factors · residual`.
    pub unit: Rational,
    pub certificate_ok: bool,
    /// Variable used as the generic direction.
    pub variable: usize,
    /// Shear applied before splitting, if any.
    pub shear: Option<LinearChange>,
    /// The element `v` of `E` that separated the factors (working coordinates).
    pub separator: Polynomial,
    pub attempts: usize,
}

impl FactorizationResult {
    pub fn is_complete(&self) -> bool {
        self.residual.is_one()
    }
}

/// Splits `p` into its factors with rational coefficients.
pub fn split(p: &Polynomial, opts: SplitOptions) -> Result<FactorizationResult> {
    let prep = genericity::prepare_seeded(p, opts.seed)?;
    let basis = nullspace(&build_system(&prep.working)?)?;
    split_prepared(&prep, &basis, opts)
}

/// [`split`] given the preparation and the closed-form basis of the
/// working polynomial.
pub fn split_prepared(
    prep: &Prepared,
    basis: &RuppertBasis,
    opts: SplitOptions,
) -> Result<FactorizationResult> {
    let w = &prep.working;
    let s = basis.dim();
    let ctx = build_quotient(w, basis, prep.variable)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut range = 10 * s as i64;
    let mut last = UniPoly::zero();
    for attempt in 1..=opts.max_retries.max(1) {
        let coeffs: Vec<Rational> = (0..s)
            .map(|_| rat(rng.random_range(-range..=range)))
            .collect();
        range = range.saturating_mul(2);
        let endo = build_endo(&ctx, &coeffs)?;
        let chi = char_poly(endo.entries());
        if !chi.is_squarefree() {
            last = chi;
            continue;
        }
        let eigenvalues = chi.rational_roots();
        let v = endo.v_rep();
        let mut local = Vec::with_capacity(eigenvalues.len());
        for lambda in &eigenvalues {
            let g = gcd(w, &(v - &ctx.derivative().scale(lambda)))?;
            if g.is_constant() {
                return Err(Error::CertificateFailure(format!(
                    "eigenvalue {lambda} gave a trivial gcd"
                )));
            }
            local.push(g);
        }
        let residual = cofactor(w, &local)?;
        let mut factors = Vec::with_capacity(local.len());
        for g in &local {
            factors.push(prep.pull_back(g)?.primitive());
        }
        let residual = prep.pull_back(&residual)?.primitive();
        let unit = cofactor_unit(&prep.original, &factors, &residual)?;
        return Ok(FactorizationResult {
            count: s,
            factors,
            eigenvalues,
            char_poly: chi,
            residual,
            unit,
            certificate_ok: true,
            variable: prep.variable,
            shear: prep.change.clone(),
            separator: v.clone(),
            attempts: attempt,
        });
    }
    Err(Error::RetriesExhausted {
        attempts: opts.max_retries.max(1),
        seed: opts.seed,
        char_poly: last.display("t"),
    })
}

/// `p / ∏factors` up to a constant, verified.
fn cofactor(p: &Polynomial, factors: &[Polynomial]) -> Result<Polynomial> {
    let prod = product(p.nvars(), factors);
    let rest = p
        .div_exact(&prod)
        .ok_or_else(|| Error::CertificateFailure("factors do not divide the input".into()))?;
    let residual = if rest.is_constant() {
        Polynomial::one(p.nvars())
    } else {
        rest.primitive()
    };
    cofactor_unit(p, factors, &residual)?;
    Ok(residual)
}

/// The constant `c` with `p = c·∏factors·residual`, checked by multiplication.
fn cofactor_unit(
    p: &Polynomial,
    factors: &[Polynomial],
    residual: &Polynomial,
) -> Result<Rational> {
    let prod = &product(p.nvars(), factors) * residual;
    let (lp, lq) = match (p.leading_coefficient(), prod.leading_coefficient()) {
        (Some(a), Some(b)) => (a.clone(), b.clone()),
        _ => return Err(Error::CertificateFailure("zero product".into())),
    };
    let c = &lp / &lq;
    if prod.scale(&c) != *p {
        return Err(Error::CertificateFailure(
            "unit times product of factors differs from the input".into(),
        ));
    }
    Ok(c)
}

/// Whether `result` certifies a factorization of `p`.
pub fn verify(p: &Polynomial, result: &FactorizationResult) -> bool {
    let prod = &product(p.nvars(), &result.factors) * &result.residual;
    !result.unit.is_zero() && prod.scale(&result.unit) == *p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse, VarTable};

    fn p2(s: &str) -> Polynomial {
        parse(s, &VarTable::new(&["x", "y"]).unwrap()).unwrap()
    }

    fn p3(s: &str) -> Polynomial {
        parse(s, &VarTable::new(&["x", "y", "z"]).unwrap()).unwrap()
    }

    fn context(p: &Polynomial) -> QuotientContext {
        let prep = genericity::prepare(p).unwrap();
        let basis = nullspace(&build_system(&prep.working).unwrap()).unwrap();
        build_quotient(&prep.working, &basis, prep.variable).unwrap()
    }

    #[test]
    fn two_lines_quotient() {
        let ctx = context(&p2("x^2 - y^2"));
        assert_eq!(ctx.dim(), 2);
        // the component classes are spanned by x + y and x - y
        for g in [p2("x + y"), p2("x - y")] {
            assert!(coordinates(&g, ctx.component_classes()).is_some());
        }
    }

    #[test]
    fn irreducible_quotient_is_one_dimensional() {
        assert_eq!(context(&p3("x^2 - z*y^2")).dim(), 1);
    }

    #[test]
    fn two_lines_split() {
        let r = split(&p2("x^2 - y^2"), SplitOptions::default()).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.factors.len(), 2);
        assert!(r.is_complete());
        let expected = [p2("x - y"), p2("x + y")];
        for e in &expected {
            assert!(r.factors.iter().any(|f| f.is_associate(e)));
        }
        assert!(verify(&p2("x^2 - y^2"), &r));
    }

    #[test]
    fn section_curve_split() {
        let p = p2("x^2*y - x");
        let r = split(&p, SplitOptions::default()).unwrap();
        assert!(r.is_complete());
        assert_eq!(r.factors.len(), 2);
        assert!(r.factors.iter().any(|f| f.is_associate(&p2("x"))));
        assert!(r.factors.iter().any(|f| f.is_associate(&p2("x*y - 1"))));
    }

    #[test]
    fn conjugate_pair_stays_in_residual() {
        let p = p2("x^2 + y^2");
        let r = split(&p, SplitOptions::default()).unwrap();
        assert_eq!(r.count, 2);
        assert!(r.factors.is_empty());
        assert_eq!(r.residual, p);
        assert_eq!(r.char_poly.degree(), Some(2));
        assert!(r.char_poly.rational_roots().is_empty());
        assert!(verify(&p, &r));
    }

    #[test]
    fn scaled_input_keeps_unit() {
        let p = p2("6*x^2 - 6*y^2");
        let r = split(&p, SplitOptions::default()).unwrap();
        assert!(r.is_complete());
        assert!(verify(&p, &r));
    }

    #[test]
    fn eigenvalues_ascend_and_gcds_divide() {
        let p = p3("(x - y)*(x + y)*(x + 2*y + z)");
        let r = split(
            &p,
            SplitOptions {
                seed: 7,
                max_retries: 8,
            },
        )
        .unwrap();
        assert_eq!(r.factors.len(), 3);
        assert!(r.eigenvalues.windows(2).all(|w| w[0] < w[1]));
        let d = p.derivative(r.variable);
        for (f, l) in r.factors.iter().zip(&r.eigenvalues) {
            assert!(f.divides(&p));
            assert!(f.divides(&(&r.separator - &d.scale(l))));
        }
    }

    #[test]
    fn sheared_input_pulls_back() {
        // no coordinate direction is generic for x*y*z
        let p = p3("x*y*z");
        let r = split(&p, SplitOptions::default()).unwrap();
        assert!(r.shear.is_some());
        assert_eq!(r.factors.len(), 3);
        for e in [p3("x"), p3("y"), p3("z")] {
            assert!(r.factors.iter().any(|f| f.is_associate(&e)));
        }
        assert!(verify(&p, &r));
    }

    #[test]
    fn not_reduced_is_rejected() {
        assert!(matches!(
            split(&p2("(x - y)^2*(x + y)"), SplitOptions::default()),
            Err(Error::NotReduced { .. })
        ));
    }

    #[test]
    fn zero_retries_still_attempts_once() {
        let r = split(
            &p2("x + y"),
            SplitOptions {
                seed: 3,
                max_retries: 0,
            },
        )
        .unwrap();
        assert_eq!(r.attempts, 1);
    }
}
