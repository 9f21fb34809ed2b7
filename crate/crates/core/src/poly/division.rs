//! Multivariate division under degrevlex.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};

struct Work {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Work {
    fn new(p: &Polynomial) -> Self {
        Work {
            nvars: p.nvars(),
            terms: p.terms().iter().cloned().collect(),
        }
    }

    fn pop_leading(&mut self) -> Option<(Monomial, Rational)> {
        self.terms.pop_last()
    }

    /// `self -= c · m · d`, skipping the leading term of `d` (already consumed).
    fn sub_multiple_tail(&mut self, d: &Polynomial, m: &Monomial, c: &Rational) {
        for (dm, dc) in &d.terms()[1..] {
            let key = dm.mul(m);
            let delta = dc * c;
            match self.terms.entry(key) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() -= delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(-delta);
                }
            }
        }
    }
}

impl Polynomial {
    /// Division by a single polynomial: `self = q·d + r` where no term of `r`
    /// is divisible by the leading monomial of `d`.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if d.is_zero() {
            return Err(Error::ZeroModulus);
        }
        if self.nvars() != d.nvars() {
            return Err(Error::ArityMismatch(self.nvars(), d.nvars()));
        }
        let (lm, lc) = &d.terms()[0];
        let mut work = Work::new(self);
        let mut quot = Vec::new();
        let mut rem = Vec::new();
        while let Some((m, c)) = work.pop_leading() {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c / lc;
                work.sub_multiple_tail(d, &qm, &qc);
                quot.push((qm, qc));
            } else {
                rem.push((m, c));
            }
        }
        // both sequences were produced in strictly descending order
        Ok((
            Polynomial::from_sorted(work.nvars, quot),
            Polynomial::from_sorted(work.nvars, rem),
        ))
    }

    /// Canonical representative of `self` modulo the principal ideal `(modulus)`.
    pub fn normal_form(&self, modulus: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(modulus)?.1)
    }

    /// `self / d` when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        match self.div_rem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        !self.is_zero() && other.div_exact(self).is_some()
    }

    /// Full reduction by a list of polynomials (the first divisor whose
    /// leading monomial divides the current term is used).
    pub fn reduce_by(&self, basis: &[Polynomial]) -> Polynomial {
        let mut work = Work::new(self);
        let mut rem = Vec::new();
        'outer: while let Some((m, c)) = work.pop_leading() {
            for g in basis {
                let (lm, lc) = &g.terms()[0];
                if lm.divides(&m) {
                    let qm = lm.quotient_of(&m);
                    let qc = &c / lc;
                    work.sub_multiple_tail(g, &qm, &qc);
                    continue 'outer;
                }
            }
            rem.push((m, c));
        }
        Polynomial::from_sorted(work.nvars, rem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse, VarTable};

    fn p(s: &str) -> Polynomial {
        parse(s, &VarTable::new(&["x", "y", "z"]).unwrap()).unwrap()
    }

    #[test]
    fn one_step_normal_form() {
        assert_eq!(p("x^2").normal_form(&p("x^2 - y^2")).unwrap(), p("y^2"));
    }

    #[test]
    fn irreducible_terms_untouched() {
        let q = p("x*y + z^3 - 4");
        assert_eq!(q.normal_form(&p("x^2 - y^2")).unwrap(), q);
    }

    #[test]
    fn multiples_vanish() {
        let m = p("x^2 - z*y^2");
        let c = p("3*x*y - z^2 + 1/2");
        assert!((&c * &m).normal_form(&m).unwrap().is_zero());
    }

    #[test]
    fn zero_modulus_rejected() {
        assert!(matches!(
            p("x").normal_form(&Polynomial::zero(3)),
            Err(Error::ZeroModulus)
        ));
    }

    #[test]
    fn division_identity() {
        let a = p("x^3*y - 2*x*z^2 + y^3 - 7");
        let d = p("x*y - z + 1");
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, a);
        let lm = d.leading_monomial().unwrap();
        assert!(r.terms().iter().all(|(m, _)| !lm.divides(m)));
        assert_eq!(r.normal_form(&d).unwrap(), r);
    }

    #[test]
    fn exact_division() {
        let a = p("x - y");
        let b = p("x^2 + z");
        assert_eq!((&a * &b).div_exact(&a).unwrap(), b);
        assert!(b.div_exact(&a).is_none());
    }
}
