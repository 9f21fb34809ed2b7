//! Test support: polynomials with known factorizations and the closed-form
//! tuples that must solve their linear systems.
//!
//! Nothing here calls the factor pipeline except to certify that a random
//! quadric is irreducible before it is used as a building block.

use derham_core::linalg::QMatrix;
use derham_core::poly::{product, rat};
use derham_core::ruppert::FormTuple;
use derham_core::{count_factors, LinearChange, Monomial, Polynomial, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The logarithmic-derivative tuple of one factor: part `i` is
/// `(∏_{k≠j} P_k)·∂P_j/∂X_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleBasisTuple {
    pub factor: usize,
    pub parts: FormTuple,
}

/// One tuple per factor of `∏ factors`.
pub fn oracle_tuples(factors: &[Polynomial]) -> Vec<OracleBasisTuple> {
    let n = factors[0].nvars();
    (0..factors.len())
        .map(|j| {
            let others: Vec<Polynomial> = factors
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, f)| f.clone())
                .collect();
            let rest = product(n, &others);
            OracleBasisTuple {
                factor: j,
                parts: FormTuple::new((0..n).map(|i| &rest * &factors[j].derivative(i)).collect()),
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Linear,
    Quadric,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub nvars: usize,
    pub factors: Vec<Polynomial>,
    pub kinds: Vec<FactorKind>,
    pub product: Polynomial,
}

impl Instance {
    pub fn count(&self) -> usize {
        self.factors.len()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonconstant affine form with coefficients in `[-3, 3]`.
pub fn random_linear_form(rng: &mut impl Rng, n: usize) -> Polynomial {
    loop {
        let mut terms: Vec<(Monomial, Rational)> = (0..n)
            .map(|i| (Monomial::var(n, i), rat(rng.random_range(-3..=3))))
            .collect();
        terms.push((Monomial::one(n), rat(rng.random_range(-3..=3))));
        let p = Polynomial::from_terms(n, terms);
        if !p.is_constant() {
            return p;
        }
    }
}

/// A sparse quadric certified absolutely irreducible by the factor count.
pub fn random_quadric(rng: &mut impl Rng, n: usize) -> Polynomial {
    loop {
        let mut terms = Vec::new();
        let nterms = rng.random_range(3..=5);
        for _ in 0..nterms {
            let mut e = vec![0u32; n];
            let deg = rng.random_range(0..=2);
            for _ in 0..deg {
                e[rng.random_range(0..n)] += 1;
            }
            let c = rng.random_range(-4..=4);
            terms.push((Monomial::new(e), rat(c)));
        }
        let p = Polynomial::from_terms(n, terms);
        if p.total_degree() != Some(2) {
            continue;
        }
        if let Ok(1) = count_factors(&p) {
            return p;
        }
    }
}

fn distinct(fs: &[Polynomial], f: &Polynomial) -> bool {
    fs.iter().all(|g| !g.is_associate(f))
}

/// A product of `k` pairwise distinct factors, `quadrics` of them quadrics.
pub fn random_instance(rng: &mut impl Rng, n: usize, k: usize, quadrics: usize) -> Instance {
    let mut factors = Vec::with_capacity(k);
    let mut kinds = Vec::with_capacity(k);
    while factors.len() < k {
        let (f, kind) = if factors.len() < quadrics {
            (random_quadric(rng, n), FactorKind::Quadric)
        } else {
            (random_linear_form(rng, n), FactorKind::Linear)
        };
        if distinct(&factors, &f) {
            factors.push(f);
            kinds.push(kind);
        }
    }
    Instance {
        nvars: n,
        product: product(n, &factors),
        factors,
        kinds,
    }
}

/// Shape of each corpus instance: `(nvars, factors, quadrics)`.
pub fn corpus_shapes() -> Vec<(usize, usize, usize)> {
    let mut shapes = Vec::with_capacity(100);
    for i in 0..35 {
        let k = 2 + i % 4;
        shapes.push((2, k, (i / 4) % 3 % k));
    }
    for i in 0..40 {
        let k = 2 + i % 4;
        let q = if k <= 3 { (i / 4) % 2 } else { 0 };
        shapes.push((3, k, q));
    }
    for i in 0..25 {
        shapes.push((4, 2 + i % 2, 0));
    }
    shapes
}

/// The fixed 100-instance corpus: products of 2 to 5 pairwise distinct
/// linear forms and quadrics in 2 to 4 variables.
pub fn corpus(seed: u64) -> Vec<Instance> {
    let mut r = rng(seed);
    corpus_shapes()
        .into_iter()
        .map(|(n, k, q)| random_instance(&mut r, n, k, q))
        .collect()
}

/// An invertible linear change with integer entries in `[-2, 2]`.
pub fn random_linear_change(rng: &mut impl Rng, n: usize) -> LinearChange {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| rat(rng.random_range(-2..=2))).collect())
            .collect();
        if let Ok(t) = LinearChange::new(QMatrix::from_rows(rows), vec![rat(0); n]) {
            return t;
        }
    }
}

/// A random sparse polynomial for round-trip fuzzing.
pub fn random_polynomial(
    rng: &mut impl Rng,
    n: usize,
    max_terms: usize,
    max_deg: u32,
) -> Polynomial {
    let nterms = rng.random_range(0..=max_terms);
    let terms: Vec<(Monomial, Rational)> = (0..nterms)
        .map(|_| {
            let e = (0..n).map(|_| rng.random_range(0..=max_deg)).collect();
            let num = rng.random_range(-50i64..=50);
            let den = rng.random_range(1i64..=12);
            (Monomial::new(e), Rational::new(num.into(), den.into()))
        })
        .collect();
    Polynomial::from_terms(n, terms)
}
