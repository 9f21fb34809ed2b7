//! Dense univariate polynomials over ℚ, used for characteristic polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// Coefficients low to high, no trailing zeros (the zero polynomial is empty).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(
            c.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() * &lc_inv;
            if !f.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &f * c;
                }
                q[k] = f;
            }
            r.pop();
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// No repeated roots over ℂ.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Primitive integer associate with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        if !g.is_zero() {
            let neg = ints.last().is_some_and(|v| v.is_negative());
            for v in ints.iter_mut() {
                *v = &*v / &g;
                if neg {
                    *v = -&*v;
                }
            }
        }
        ints
    }

    /// All distinct rational roots, ascending.
    ///
    /// A rational root `a/b` in lowest terms of the primitive integer form has
    /// `b | lc`, so roots lie on the grid `k/lc`. Real roots are isolated with
    /// a Sturm sequence and each isolating interval is shrunk below `1/lc`,
    /// leaving at most one grid candidate to test exactly.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        // work on the squarefree part so Sturm counts distinct roots
        let g = self.gcd(&self.derivative());
        let sqf = if g.degree().unwrap_or(0) > 0 {
            self.div_rem(&g).0
        } else {
            self.clone()
        };
        let ints = sqf.primitive_integer();
        let f = UniPoly::new(ints.iter().cloned().map(Rational::from_integer).collect());
        let lc = ints.last().unwrap().clone();
        let grid = Rational::new(BigInt::one(), lc.clone());
        let lc_abs = f.coeffs.last().unwrap().abs();
        let bound = f
            .coeffs
            .iter()
            .take(f.coeffs.len() - 1)
            .map(|c| c.abs() / &lc_abs)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a })
            + Rational::one();
        let sturm = sturm_sequence(&f);
        let mut roots = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let count = sign_changes(&sturm, &lo) - sign_changes(&sturm, &hi);
            if count == 0 {
                continue;
            }
            if count == 1 && &hi - &lo < grid {
                let k_lo = (&lo * Rational::from_integer(lc.clone())).ceil();
                let k_hi = (&hi * Rational::from_integer(lc.clone())).floor();
                let mut k = k_lo;
                while k <= k_hi {
                    let cand = &k / Rational::from_integer(lc.clone());
                    if cand > lo && f.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                    k += Rational::one();
                }
                continue;
            }
            let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
            if f.eval(&mid).is_zero() {
                roots.push(mid.clone());
                // step off the root until both sides are clean
                let mut eps = (&hi - &lo) / Rational::from_integer(BigInt::from(4));
                loop {
                    let (a, b) = (&mid - &eps, &mid + &eps);
                    if !f.eval(&a).is_zero()
                        && !f.eval(&b).is_zero()
                        && sign_changes(&sturm, &a) - sign_changes(&sturm, &b) == 1
                    {
                        stack.push((lo.clone(), a));
                        stack.push((b, hi.clone()));
                        break;
                    }
                    eps /= Rational::from_integer(BigInt::from(2));
                }
            } else {
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }

    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let cs = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&cs);
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{cs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("t"))
    }
}

fn sturm_sequence(f: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(UniPoly::new(r.coeffs.iter().map(|c| -c).collect()));
    }
    seq
}

fn sign_changes(seq: &[UniPoly], t: &Rational) -> i64 {
    let mut last = 0i8;
    let mut changes = 0;
    for p in seq {
        let v = p.eval(t);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}
