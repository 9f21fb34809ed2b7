//! Polynomial multiplication on integer images of the coefficients.
//!
//! Both factors are scaled to integer coefficients, the products are
//! accumulated in `i128` when the sizes allow it (else in `BigInt`), and
//! monomials are packed into a single `u128` key when the exponents fit.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Monomial, Polynomial, Rational};

/// Scales to integer coefficients: returns `(numerators, d)` with
/// `p = numerators / d`.
fn integer_image(p: &Polynomial) -> (Vec<BigInt>, BigInt) {
    let d = p
        .terms()
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let nums = p
        .terms()
        .iter()
        .map(|(_, c)| c.numer() * (&d / c.denom()))
        .collect();
    (nums, d)
}

/// Packs monomials with bounded exponents into a `u128`; multiplying
/// monomials becomes adding keys.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Packing {
    nvars: usize,
    bits: u32,
}

impl Packing {
    /// A layout holding every exponent up to `max_exp`, if one fits.
    pub(crate) fn new(nvars: usize, max_exp: u32) -> Option<Packing> {
        let bits = 32 - max_exp.leading_zeros();
        let bits = bits.max(1);
        (nvars as u32 * bits <= 128).then_some(Packing { nvars, bits })
    }

    pub(crate) fn pack(&self, m: &Monomial) -> u128 {
        m.exps()
            .iter()
            .fold(0u128, |k, &e| (k << self.bits) | e as u128)
    }

    /// Key of the variable `var` itself.
    pub(crate) fn unit(&self, var: usize) -> u128 {
        1u128 << (self.bits as usize * (self.nvars - 1 - var))
    }

    pub(crate) fn unpack(&self, mut k: u128) -> Monomial {
        let mask = (1u128 << self.bits) - 1;
        let mut e = vec![0u32; self.nvars];
        for slot in e.iter_mut().rev() {
            *slot = (k & mask) as u32;
            k >>= self.bits;
        }
        Monomial::new(e)
    }
}

fn convolve<K, C>(
    a: &[(K, C)],
    b: &[(K, C)],
    key: impl Fn(&K, &K) -> K,
    prod: impl Fn(&C, &C) -> C,
    add: impl Fn(&mut C, C),
) -> HashMap<K, C>
where
    K: Hash + Eq,
{
    let mut acc: HashMap<K, C> = HashMap::with_capacity(a.len() * b.len());
    for (ka, ca) in a {
        for (kb, cb) in b {
            let c = prod(ca, cb);
            match acc.entry(key(ka, kb)) {
                std::collections::hash_map::Entry::Occupied(mut e) => add(e.get_mut(), c),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
    }
    acc
}

/// Product of two polynomials with at least two terms each.
pub(super) fn multiply(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let n = a.nvars();
    let (na, da) = integer_image(a);
    let (nb, db) = integer_image(b);
    let scale = Rational::new(BigInt::one(), da * db);

    // |x|, |y| < 2^40 and fewer than 2^40 terms keep every sum within i128
    const SMALL: i64 = 1 << 40;
    let small = |v: &[BigInt]| -> Option<Vec<i128>> {
        v.iter()
            .map(|x| x.to_i64().filter(|y| y.abs() < SMALL).map(i128::from))
            .collect()
    };
    let max_exp = |p: &Polynomial| p.total_degree().unwrap_or(0);
    let packing = Packing::new(n, max_exp(a) + max_exp(b));

    let mut terms: Vec<(Monomial, Rational)> = match (packing, small(&na), small(&nb)) {
        (Some(pk), Some(sa), Some(sb)) => {
            let ka: Vec<(u128, i128)> = a.terms().iter().map(|(m, _)| pk.pack(m)).zip(sa).collect();
            let kb: Vec<(u128, i128)> = b.terms().iter().map(|(m, _)| pk.pack(m)).zip(sb).collect();
            convolve(&ka, &kb, |x, y| x + y, |x, y| x * y, |s, c| *s += c)
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(k, c)| {
                    (
                        pk.unpack(k),
                        Rational::from_integer(BigInt::from(c)) * &scale,
                    )
                })
                .collect()
        }
        (Some(pk), _, _) => {
            let ka: Vec<(u128, BigInt)> =
                a.terms().iter().map(|(m, _)| pk.pack(m)).zip(na).collect();
            let kb: Vec<(u128, BigInt)> =
                b.terms().iter().map(|(m, _)| pk.pack(m)).zip(nb).collect();
            convolve(&ka, &kb, |x, y| x + y, |x, y| x * y, |s, c| *s += c)
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (pk.unpack(k), Rational::from_integer(c) * &scale))
                .collect()
        }
        (None, _, _) => {
            let ka: Vec<(Monomial, BigInt)> =
                a.terms().iter().map(|(m, _)| m.clone()).zip(na).collect();
            let kb: Vec<(Monomial, BigInt)> =
                b.terms().iter().map(|(m, _)| m.clone()).zip(nb).collect();
            convolve(&ka, &kb, |x, y| x.mul(y), |x, y| x * y, |s, c| *s += c)
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, Rational::from_integer(c) * &scale))
                .collect()
        }
    };
    terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    Polynomial::from_sorted(n, terms)
}
