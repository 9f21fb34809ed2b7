//! Multiplication by a separating element on the component classes, and its
//! characteristic polynomial.

use num_traits::Zero;

use super::{coordinates, QuotientContext};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::{rat, Polynomial, Rational};
use crate::univariate::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMatrix {
    entries: QMatrix,
    v_rep: Polynomial,
}

impl EndoMatrix {
    /// Column `k` holds the image of the `k`-th component class.
    pub fn entries(&self) -> &QMatrix {
        &self.entries
    }

    pub fn v_rep(&self) -> &Polynomial {
        &self.v_rep
    }
}

/// The matrix of `c ↦ v·c / D` for `v = Σ coeffs[k]·liftₖ`.
///
/// Column `k` solves `NF(v·cₖ) = Σₗ m[l][k]·NF(D·cₗ)`.
pub fn build_endo(ctx: &QuotientContext, coeffs: &[Rational]) -> Result<EndoMatrix> {
    let s = ctx.dim();
    if coeffs.len() != s {
        return Err(Error::ArityMismatch(s, coeffs.len()));
    }
    let v = ctx.element(coeffs);
    let mut entries = QMatrix::zeros(s, s);
    for (k, e) in ctx.component_classes().iter().enumerate() {
        let image = (&v * e).normal_form(ctx.modulus())?;
        let col = coordinates(&image, ctx.scaled_classes()).ok_or(Error::UnsolvableColumn(k))?;
        for (l, x) in col.into_iter().enumerate() {
            entries[(l, k)] = x;
        }
    }
    Ok(EndoMatrix { entries, v_rep: v })
}

/// `det(t·I − m)` by the Faddeev–LeVerrier recurrence.
pub fn char_poly(m: &QMatrix) -> UniPoly {
    assert!(m.is_square());
    let n = m.nrows();
    // coeffs[k] multiplies t^k
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = rat(1);
    let mut acc = QMatrix::zeros(n, n);
    for k in 1..=n {
        acc = m.mul(&acc);
        acc.add_scalar_identity(&coeffs[n + 1 - k]);
        coeffs[n - k] = -m.mul(&acc).trace() / rat(k as i64);
    }
    UniPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::build_quotient;
    use crate::genericity::prepare;
    use crate::parse::{parse, VarTable};
    use crate::ruppert::{build_system, nullspace};

    fn p2(s: &str) -> Polynomial {
        parse(s, &VarTable::new(&["x", "y"]).unwrap()).unwrap()
    }

    fn ctx(s: &str) -> QuotientContext {
        let p = p2(s);
        let prep = prepare(&p).unwrap();
        let basis = nullspace(&build_system(&prep.working).unwrap()).unwrap();
        build_quotient(&prep.working, &basis, prep.variable).unwrap()
    }

    /// Coefficients of `target` in terms of the lifts of `ctx`.
    fn lift_coords(ctx: &QuotientContext, target: &Polynomial) -> Vec<Rational> {
        super::super::coordinates(target, ctx.lifts()).unwrap()
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            char_poly(&QMatrix::identity(2)),
            UniPoly::from_ints(&[1, -2, 1])
        );
        assert_eq!(
            char_poly(&QMatrix::zeros(3, 3)),
            UniPoly::from_ints(&[0, 0, 0, 1])
        );
        let m = QMatrix::from_rows(vec![vec![rat(2), rat(1)], vec![rat(3), rat(4)]]);
        // t² − 6t + 5
        assert_eq!(char_poly(&m), UniPoly::from_ints(&[5, -6, 1]));
    }

    #[test]
    fn char_poly_matches_determinant() {
        let m = QMatrix::from_rows(vec![
            vec![rat(1), rat(-2), rat(0)],
            vec![rat(3), rat(1), rat(5)],
            vec![rat(-1), rat(4), rat(2)],
        ]);
        let chi = char_poly(&m);
        for t in -3..4 {
            let mut a = m.clone();
            for i in 0..3 {
                for j in 0..3 {
                    a[(i, j)] = -a[(i, j)].clone();
                }
            }
            a.add_scalar_identity(&rat(t));
            assert_eq!(chi.eval(&rat(t)), a.determinant());
        }
    }

    #[test]
    fn separator_from_one_line() {
        // v = x + y is the first component of the form for the factor x - y
        let c = ctx("x^2 - y^2");
        let coeffs = lift_coords(&c, &p2("x + y"));
        let m = build_endo(&c, &coeffs).unwrap();
        assert_eq!(char_poly(m.entries()), UniPoly::from_ints(&[0, -1, 1]));
    }

    #[test]
    fn derivative_acts_as_identity() {
        let c = ctx("x^2 - y^2");
        let coeffs = lift_coords(&c, c.derivative());
        let m = build_endo(&c, &coeffs).unwrap();
        assert_eq!(m.entries(), &QMatrix::identity(2));
    }

    #[test]
    fn zero_element() {
        let c = ctx("x^2 - y^2");
        let m = build_endo(&c, &[rat(0), rat(0)]).unwrap();
        assert_eq!(m.entries(), &QMatrix::zeros(2, 2));
        assert!(m.v_rep().is_zero());
    }
}
