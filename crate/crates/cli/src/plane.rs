//! Affine 2-planes `p + s·u + t·w` and restriction of polynomials to them.

use std::fmt;

use derham_core::linalg::QMatrix;
use derham_core::poly::rat;
use derham_core::{Monomial, Polynomial, Rational};
use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane2 {
    point: Vec<Rational>,
    dir_s: Vec<Rational>,
    dir_t: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaneError {
    Syntax(String),
    Length { expected: usize, found: usize },
    Dependent,
}

impl fmt::Display for PlaneError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneError::Syntax(s) => write!(f, "bad plane spec: {s}"),
            PlaneError::Length { expected, found } => {
                write!(f, "plane vectors need {expected} entries, got {found}")
            }
            PlaneError::Dependent => f.write_str("plane directions are linearly dependent"),
        }
    }
}

impl std::error::Error for PlaneError {}

fn parse_rational(s: &str) -> Result<Rational, PlaneError> {
    let s = s.trim();
    let bad = || PlaneError::Syntax(format!("`{s}` is not a rational number"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n.into(), d.into()))
        }
        None => s.parse::<i64>().map(rat).map_err(|_| bad()),
    }
}

fn sample_vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rat(rng.random_range(-5..=5))).collect()
}

impl Plane2 {
    pub fn new(
        point: Vec<Rational>,
        dir_s: Vec<Rational>,
        dir_t: Vec<Rational>,
    ) -> Result<Self, PlaneError> {
        let n = point.len();
        for v in [&dir_s, &dir_t] {
            if v.len() != n {
                return Err(PlaneError::Length {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        if QMatrix::from_rows(vec![dir_s.clone(), dir_t.clone()]).rank() < 2 {
            return Err(PlaneError::Dependent);
        }
        Ok(Plane2 {
            point,
            dir_s,
            dir_t,
        })
    }

    /// Parses `"p;u;w"`, three comma-separated lists of rationals.
    pub fn parse(spec: &str, n: usize) -> Result<Self, PlaneError> {
        let parts: Vec<&str> = spec.split(';').collect();
        if parts.len() != 3 {
            return Err(PlaneError::Syntax(format!(
                "expected three `;`-separated vectors, got {}",
                parts.len()
            )));
        }
        let mut vecs = Vec::with_capacity(3);
        for part in parts {
            let v = part
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()?;
            if v.len() != n {
                return Err(PlaneError::Length {
                    expected: n,
                    found: v.len(),
                });
            }
            vecs.push(v);
        }
        let w = vecs.pop().unwrap();
        let u = vecs.pop().unwrap();
        let p = vecs.pop().unwrap();
        Plane2::new(p, u, w)
    }

    /// Integer entries in `[-5, 5]`, resampled until the directions are
    /// independent.
    pub fn random(rng: &mut impl Rng, n: usize) -> Self {
        loop {
            let p = sample_vector(rng, n);
            let u = sample_vector(rng, n);
            let w = sample_vector(rng, n);
            if let Ok(plane) = Plane2::new(p, u, w) {
                return plane;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.point.len()
    }

    pub fn point(&self) -> &[Rational] {
        &self.point
    }

    pub fn dir_s(&self) -> &[Rational] {
        &self.dir_s
    }

    pub fn dir_t(&self) -> &[Rational] {
        &self.dir_t
    }

    /// `Q(s, t) = P(p + s·u + t·w)`.
    pub fn restrict(&self, p: &Polynomial) -> derham_core::Result<Polynomial> {
        let images: Vec<Polynomial> = (0..self.dim())
            .map(|i| {
                Polynomial::from_terms(
                    2,
                    [
                        (Monomial::one(2), self.point[i].clone()),
                        (Monomial::var(2, 0), self.dir_s[i].clone()),
                        (Monomial::var(2, 1), self.dir_t[i].clone()),
                    ],
                )
            })
            .collect();
        p.compose(&images)
    }
}

impl fmt::Display for Plane2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rational]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "{};{};{}",
            join(&self.point),
            join(&self.dir_s),
            join(&self.dir_t)
        )
    }
}
