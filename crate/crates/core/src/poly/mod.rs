//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept sorted in descending graded reverse lexicographic order
//! (variable 0 is the largest variable) and never carry a zero coefficient,
//! so structural equality is mathematical equality.

mod change;
mod division;
mod gcd;
mod mul;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use change::LinearChange;
pub use gcd::{coprime_certificate, gcd};
pub(crate) use mul::Packing;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector. Ordered by degrevlex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial::new(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(
            other
                .0
                .iter()
                .zip(self.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn with_exp(&self, var: usize, e: u32) -> Monomial {
        let mut m = self.0.clone();
        m[var] = e;
        Monomial(m)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(other.0.iter()).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Per-variable degree bounds; `-1` means "this slot must vanish".
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MultiDegree) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn bounds(&self) -> &[i64] {
        &self.0
    }

    /// `self` with `var` lowered by one, the bound for the `var`-th slot of
    /// a closed form tuple.
    pub fn lowered(&self, var: usize) -> MultiDegree {
        let mut b = self.0.clone();
        b[var] -= 1;
        MultiDegree(b)
    }

    /// Number of monomials in the box, zero if any bound is negative.
    pub fn box_size(&self) -> usize {
        if self.0.iter().any(|&b| b < 0) {
            return 0;
        }
        self.0.iter().map(|&b| (b + 1) as usize).product()
    }

    /// All monomials with exponents inside the box, in descending degrevlex.
    pub fn box_monomials(&self) -> Vec<Monomial> {
        if self.0.iter().any(|&b| b < 0) {
            return Vec::new();
        }
        let n = self.0.len();
        let mut out = Vec::with_capacity(self.box_size());
        let mut cur = vec![0u32; n];
        loop {
            out.push(Monomial::new(cur.clone()));
            let mut i = 0;
            loop {
                if i == n {
                    out.sort_unstable_by(|a, b| b.cmp(a));
                    return out;
                }
                if (cur[i] as i64) < self.0[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    // descending degrevlex, no zero coefficients
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero)
    /// terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { nvars, terms }
    }

    /// Trusted constructor: terms must already be sorted descending, distinct
    /// and nonzero.
    pub(crate) fn from_sorted(nvars: usize, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { nvars, terms }
    }

    /// Integer-coefficient convenience constructor: `(coeff, exponents)`.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(c, e)| (Monomial::new(e.to_vec()), rat(*c))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exps()[var]).max()
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exps()[var] > 0)
    }

    /// Variables that occur with positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.contains_var(v)).collect()
    }

    pub fn multideg(&self) -> MultiDegree {
        let mut b = vec![-1i64; self.nvars];
        for (m, _) in &self.terms {
            for (bi, &e) in b.iter_mut().zip(m.exps()) {
                *bi = (*bi).max(e as i64);
            }
        }
        MultiDegree(b)
    }

    fn check_arity(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    fn check_var(&self, var: usize) -> Result<()> {
        if var >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: var,
                arity: self.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        Ok(self.mul_impl(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial::from_sorted(self.nvars, out)
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        mul::multiply(self, other)
    }

    /// Multiplication by a single term; monomial order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial::from_sorted(
            self.nvars,
            self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial::from_sorted(
            self.nvars,
            self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative in `var`; panics if `var` is out of range.
    pub fn derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.nvars, "variable index out of range");
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps()[var] > 0)
            .map(|(m, c)| {
                let e = m.exps()[var];
                (m.with_exp(var, e - 1), c * rat(e as i64))
            });
        // lowering the same exponent in every surviving term keeps degrevlex order
        Polynomial::from_sorted(self.nvars, terms.collect())
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial> {
        self.check_var(var)?;
        Ok(self.derivative(var))
    }

    /// Coefficients of `self` as a univariate polynomial in `var`, indexed by
    /// the power of `var`. Each coefficient is free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = match self.degree_in(var) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exps()[var] as usize;
            buckets[e].push((m.with_exp(var, 0), c.clone()));
        }
        // within a bucket every term loses the same exponent, so order is kept
        buckets
            .into_iter()
            .map(|t| Polynomial::from_sorted(self.nvars, t))
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, v) in c.terms() {
                terms.push((m.with_exp(var, m.exps()[var] + e as u32), v.clone()));
            }
        }
        Polynomial::from_terms(nvars, terms)
    }

    /// Substitutes constants for some variables; arity is preserved.
    pub fn evaluate_partial(&self, assignments: &[(usize, Rational)]) -> Result<Polynomial> {
        for (v, _) in assignments {
            self.check_var(*v)?;
        }
        if assignments.is_empty() {
            return Ok(self.clone());
        }
        let mut values: Vec<Option<&Rational>> = vec![None; self.nvars];
        for (v, c) in assignments {
            values[*v] = Some(c);
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = m.exps().to_vec();
            let mut coeff = c.clone();
            for (v, val) in values.iter().enumerate() {
                if let Some(val) = val {
                    if exps[v] > 0 {
                        coeff *= num_traits::pow((*val).clone(), exps[v] as usize);
                        exps[v] = 0;
                    }
                }
            }
            (Monomial::new(exps), coeff)
        });
        Ok(Polynomial::from_terms(self.nvars, terms))
    }

    /// Full evaluation at a point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch(self.nvars, point.len()));
        }
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Replaces every variable `Xᵢ` by `images[i]`. The result has the arity
    /// of the images.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch(self.nvars, images.len()));
        }
        let target = images.first().map_or(0, |p| p.nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::ArityMismatch(target, bad.nvars));
        }
        let md = self.multideg();
        let powers: Vec<Vec<Polynomial>> = images
            .iter()
            .zip(md.bounds())
            .map(|(img, &d)| {
                let mut ps = vec![Polynomial::one(target)];
                for k in 1..=d.max(0) as usize {
                    let next = &ps[k - 1] * img;
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[v][e as usize];
                }
            }
            for (tm, tc) in t.terms {
                *acc.entry(tm).or_insert_with(Rational::zero) += tc;
            }
        }
        Ok(Polynomial::from_map(target, acc))
    }

    pub fn apply_change(&self, t: &LinearChange) -> Result<Polynomial> {
        if t.dim() != self.nvars {
            return Err(Error::ArityMismatch(self.nvars, t.dim()));
        }
        self.compose(&t.images())
    }

    /// Rational content: the positive rational `c` with `self / c` having
    /// coprime integer coefficients.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num, den)
    }

    /// Primitive integer associate with positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        let inv = c.recip();
        self.scale(&inv)
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Top homogeneous component.
    pub fn leading_form(&self) -> Polynomial {
        let d = match self.total_degree() {
            Some(d) => d,
            None => return self.clone(),
        };
        Polynomial::from_sorted(
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        )
    }

    pub fn is_associate(&self, other: &Polynomial) -> bool {
        self.primitive() == other.primitive()
    }

    /// Embeds into a larger variable set: variable `i` goes to `map[i]`.
    pub fn rename(&self, nvars: usize, map: &[usize]) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u32; nvars];
                for (i, &x) in m.exps().iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial::new(e), c.clone())
            }),
        )
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::parse::VarTable::default_names(self.nvars);
        f.write_str(&crate::parse::print_with(self, &names))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        self.mul_impl(rhs)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_sorted(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        )
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Product of a slice of polynomials of common arity.
pub fn product(nvars: usize, ps: &[Polynomial]) -> Polynomial {
    ps.iter().fold(Polynomial::one(nvars), |acc, p| &acc * p)
}
