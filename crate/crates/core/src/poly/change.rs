use num_traits::{One, Zero};

use super::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::linalg::dense::QMatrix;

/// Affine change of coordinates `Xᵢ ↦ Σⱼ mᵢⱼ Xⱼ + bᵢ` with invertible `m`.
///
/// Applying a change to a polynomial substitutes these images for the
/// variables, so `apply(p, t)(x) = p(m·x + b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    matrix: QMatrix,
    translation: Vec<Rational>,
}

impl LinearChange {
    pub fn new(matrix: QMatrix, translation: Vec<Rational>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() != translation.len() {
            return Err(Error::ArityMismatch(matrix.nrows(), translation.len()));
        }
        if matrix.determinant().is_zero() {
            return Err(Error::SingularChange);
        }
        Ok(LinearChange {
            matrix,
            translation,
        })
    }

    pub fn identity(n: usize) -> Self {
        LinearChange {
            matrix: QMatrix::identity(n),
            translation: vec![Rational::zero(); n],
        }
    }

    /// `Xⱼ ↦ Xⱼ + cⱼ·X_target` for `j ≠ target`; `coeffs[target]` is ignored.
    pub fn shear(target: usize, coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut m = QMatrix::identity(n);
        for (j, c) in coeffs.iter().enumerate() {
            if j != target {
                m[(j, target)] = c.clone();
            }
        }
        LinearChange {
            matrix: m,
            translation: vec![Rational::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn translation(&self) -> &[Rational] {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == QMatrix::identity(self.dim()) && self.translation.iter().all(Zero::is_zero)
    }

    /// The polynomial images of the variables.
    pub fn images(&self) -> Vec<Polynomial> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut terms = Vec::with_capacity(n + 1);
                for j in 0..n {
                    terms.push((super::Monomial::var(n, j), self.matrix[(i, j)].clone()));
                }
                terms.push((super::Monomial::one(n), self.translation[i].clone()));
                Polynomial::from_terms(n, terms)
            })
            .collect()
    }

    pub fn inverse(&self) -> LinearChange {
        let inv = self
            .matrix
            .inverse()
            .expect("LinearChange holds an invertible matrix");
        let t = inv.mul_vec(&self.translation);
        LinearChange {
            matrix: inv,
            translation: t.into_iter().map(|x| -x).collect(),
        }
    }

    /// The change equivalent to applying `self` first and `next` second:
    /// `apply(apply(p, self), next) = apply(p, self.then(next))`.
    pub fn then(&self, next: &LinearChange) -> LinearChange {
        assert_eq!(self.dim(), next.dim());
        // x ↦ S(Tx + t) + s
        let matrix = self.matrix.mul(&next.matrix);
        let st = self.matrix.mul_vec(&next.translation);
        let translation = st
            .into_iter()
            .zip(&self.translation)
            .map(|(a, b)| a + b)
            .collect();
        LinearChange {
            matrix,
            translation,
        }
    }

    pub fn is_linear(&self) -> bool {
        self.translation.iter().all(Zero::is_zero)
    }

    pub fn one_hot(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        v
    }
}
