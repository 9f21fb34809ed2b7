//! The linear system of closed rational 1-forms with poles along `P = 0`.
//!
//! A tuple `A = (A₁,…,Aₙ)` is admissible when `multideg(Aᵢ) ≤ multideg(P) − eᵢ`
//! and `Σ Aᵢ/P dXᵢ` is closed, i.e. for every pair `i < j`
//!
//! ```text
//! P·∂ᵢAⱼ − Aⱼ·∂ᵢP − P·∂ⱼAᵢ + Aᵢ·∂ⱼP = 0.
//! ```
//!
//! The admissible tuples form a ℚ-vector space whose dimension is the number
//! of irreducible factors of a reduced `P` over ℂ.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;
use std::ops::{AddAssign, Mul, Neg, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::genericity;
use crate::linalg::sparse::{NullspaceMethod, SparseMatrix, SparseRow};
use crate::poly::{Monomial, MultiDegree, Packing, Polynomial, Rational};

/// `(A₁,…,Aₙ)`, standing for the form `Σ Aᵢ/P dXᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormTuple {
    parts: Vec<Polynomial>,
}

impl FormTuple {
    pub fn new(parts: Vec<Polynomial>) -> Self {
        FormTuple { parts }
    }

    pub fn parts(&self) -> &[Polynomial] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &Polynomial {
        &self.parts[i]
    }

    /// `multideg(Aᵢ) ≤ md − eᵢ` for every slot.
    pub fn within_bounds(&self, md: &MultiDegree) -> bool {
        self.parts
            .iter()
            .enumerate()
            .all(|(i, a)| a.is_zero() || a.multideg().le(&md.lowered(i)))
    }

    /// The cleared closedness identity for every pair `i < j`.
    pub fn is_closed(&self, p: &Polynomial) -> bool {
        let n = p.nvars();
        let dp: Vec<Polynomial> = (0..n).map(|i| p.derivative(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let (ai, aj) = (&self.parts[i], &self.parts[j]);
                let lhs = &(&(p * &aj.derivative(i)) - &(aj * &dp[i]))
                    - &(&(p * &ai.derivative(j)) - &(ai * &dp[j]));
                if !lhs.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn scale(&self, c: &Rational) -> FormTuple {
        FormTuple::new(self.parts.iter().map(|a| a.scale(c)).collect())
    }

    pub fn add(&self, other: &FormTuple) -> FormTuple {
        FormTuple::new(
            self.parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowKey {
    /// `(i, j)` with `i < j`.
    pub pair: (usize, usize),
    pub monomial: Monomial,
}

#[derive(Clone, Debug)]
pub struct RuppertSystem {
    base: Polynomial,
    multideg: MultiDegree,
    layout: Vec<Vec<Monomial>>,
    offsets: Vec<usize>,
    matrix: SparseMatrix,
    row_keys: Vec<RowKey>,
}

impl RuppertSystem {
    pub fn base(&self) -> &Polynomial {
        &self.base
    }

    pub fn multideg(&self) -> &MultiDegree {
        &self.multideg
    }

    /// Admissible monomials of each slot, in column order.
    pub fn layout(&self) -> &[Vec<Monomial>] {
        &self.layout
    }

    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn nrows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn row_keys(&self) -> &[RowKey] {
        &self.row_keys
    }

    /// Column index of the coefficient of `m` in slot `slot`.
    pub fn column_of(&self, slot: usize, m: &Monomial) -> Option<usize> {
        self.layout[slot]
            .iter()
            .position(|x| x == m)
            .map(|i| self.offsets[slot] + i)
    }

    pub fn tuple_from_vector(&self, x: &[Rational]) -> FormTuple {
        let n = self.base.nvars();
        FormTuple::new(
            self.layout
                .iter()
                .enumerate()
                .map(|(k, monos)| {
                    Polynomial::from_terms(
                        n,
                        monos
                            .iter()
                            .enumerate()
                            .map(|(i, m)| (m.clone(), x[self.offsets[k] + i].clone())),
                    )
                })
                .collect(),
        )
    }

    /// Coordinates of a tuple in column order; `None` if it leaves the layout.
    pub fn vector_from_tuple(&self, t: &FormTuple) -> Option<Vec<Rational>> {
        let mut x = vec![Rational::zero(); self.ncols()];
        for (k, a) in t.parts().iter().enumerate() {
            for (m, c) in a.terms() {
                x[self.column_of(k, m)?] = c.clone();
            }
        }
        Some(x)
    }

    /// Whether a tuple, read as a coefficient vector, lies in the nullspace.
    pub fn contains(&self, t: &FormTuple) -> bool {
        match self.vector_from_tuple(t) {
            Some(x) => self.matrix.annihilates(&x, Exec::Sequential),
            None => false,
        }
    }
}

/// Builds the system for `p` using the default execution policy.
pub fn build_system(p: &Polynomial) -> Result<RuppertSystem> {
    build_system_with(p, Exec::default())
}

pub fn build_system_with(p: &Polynomial, exec: Exec) -> Result<RuppertSystem> {
    if p.is_constant() {
        return Err(Error::ConstantInput);
    }
    let n = p.nvars();
    // the system is homogeneous in P, so a primitive integer associate serves
    let ip = p.primitive();
    let multideg = p.multideg();
    let layout: Vec<Vec<Monomial>> = (0..n)
        .map(|k| multideg.lowered(k).box_monomials())
        .collect();
    let mut offsets = Vec::with_capacity(n);
    let mut ncols = 0;
    for slot in &layout {
        offsets.push(ncols);
        ncols += slot.len();
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let columns: Vec<(usize, &Monomial)> = layout
        .iter()
        .enumerate()
        .flat_map(|(k, ms)| ms.iter().map(move |m| (k, m)))
        .collect();

    let max_exp = multideg.bounds().iter().copied().max().unwrap_or(0).max(0) as u32;
    let max_coeff = ip
        .terms()
        .iter()
        .map(|(_, c)| c.numer().bits())
        .max()
        .unwrap_or(0);
    let packing = Packing::new(n, 2 * max_exp + 1);
    // entries are sums of two products e·c with e ≤ max_exp
    let small = max_coeff + 40 < 120;
    let keyed: Vec<(RowKey, SparseRow)> = match packing {
        Some(pk) if small => {
            let terms = |q: &Polynomial| -> Vec<(u128, i128)> {
                q.terms()
                    .iter()
                    .map(|(m, c)| (pk.pack(m), c.numer().to_i128().expect("fits")))
                    .collect()
            };
            let lower = |mu: &Monomial, d: usize| pk.pack(mu) - pk.unit(d);
            let rows = assemble(
                &ip,
                &pairs,
                &columns,
                exec,
                terms,
                |m| pk.pack(m),
                lower,
                |a, b| a + b,
            );
            finish_rows(rows, &pairs, |k| pk.unpack(*k))
        }
        _ => {
            let terms = |q: &Polynomial| -> Vec<(Monomial, BigInt)> {
                q.terms()
                    .iter()
                    .map(|(m, c)| (m.clone(), c.numer().clone()))
                    .collect()
            };
            let lower = |mu: &Monomial, d: usize| mu.with_exp(d, mu.exps()[d] - 1);
            let rows = assemble(
                &ip,
                &pairs,
                &columns,
                exec,
                terms,
                |m| m.clone(),
                lower,
                |a, b| a.mul(b),
            );
            finish_rows(rows, &pairs, |k| k.clone())
        }
    };

    let mut seen: HashSet<SparseRow> = HashSet::new();
    let mut row_keys = Vec::new();
    let mut matrix_rows = Vec::new();
    for (key, row) in keyed {
        // columns were visited in increasing order, so rows are sorted
        let norm = normalize_row(&row);
        if norm.is_empty() || !seen.insert(norm.clone()) {
            continue;
        }
        row_keys.push(key);
        matrix_rows.push(norm);
    }
    Ok(RuppertSystem {
        base: p.clone(),
        multideg,
        layout,
        offsets,
        matrix: SparseMatrix::new(ncols, matrix_rows),
        row_keys,
    })
}

type Rows<K> = HashMap<(usize, K), SparseRow>;

/// Row-grouped entries of the cleared identities. For pair `(a, b)` the
/// unknown `μ` of slot `b` enters as `P·∂ₐμ − μ·∂ₐP` and the unknown of slot
/// `a` as `−(P·∂_bμ − μ·∂_bP)`.
#[allow(clippy::too_many_arguments)]
fn assemble<K, C>(
    ip: &Polynomial,
    pairs: &[(usize, usize)],
    columns: &[(usize, &Monomial)],
    exec: Exec,
    terms: impl Fn(&Polynomial) -> Vec<(K, C)>,
    key: impl Fn(&Monomial) -> K + Sync + Send,
    lower: impl Fn(&Monomial, usize) -> K + Sync + Send,
    mul: impl Fn(&K, &K) -> K + Sync + Send,
) -> Rows<K>
where
    K: Hash + Eq + Clone + Send + Sync,
    C: Clone + Zero + From<u32> + Mul<Output = C> + AddAssign + SubAssign + Neg<Output = C>,
    C: Into<BigInt> + Send + Sync,
{
    let n = ip.nvars();
    let pterms = terms(ip);
    let dp: Vec<Vec<(K, C)>> = (0..n).map(|a| terms(&ip.derivative(a))).collect();
    let column_entries = |col: usize| -> Vec<(usize, K, C)> {
        let (k, mu) = columns[col];
        let kmu = key(mu);
        let mut out = Vec::new();
        for (pi, &(a, b)) in pairs.iter().enumerate() {
            let (d, negate) = if k == b {
                (a, false)
            } else if k == a {
                (b, true)
            } else {
                continue;
            };
            let mut acc: HashMap<K, C> = HashMap::new();
            let e = mu.exps()[d];
            if e > 0 {
                let lowered = lower(mu, d);
                for (m, c) in &pterms {
                    *acc.entry(mul(m, &lowered)).or_insert_with(C::zero) += c.clone() * C::from(e);
                }
            }
            for (m, c) in &dp[d] {
                *acc.entry(mul(m, &kmu)).or_insert_with(C::zero) -= c.clone();
            }
            for (m, v) in acc {
                if !v.is_zero() {
                    out.push((pi, m, if negate { -v } else { v }));
                }
            }
        }
        out
    };
    let per_column = exec.map_range(0..columns.len(), column_entries);
    let mut rows: Rows<K> = HashMap::new();
    for (col, entries) in per_column.into_iter().enumerate() {
        for (pi, m, v) in entries {
            rows.entry((pi, m))
                .or_default()
                .push((col as u32, v.into()));
        }
    }
    rows
}

fn finish_rows<K>(
    rows: Rows<K>,
    pairs: &[(usize, usize)],
    monomial: impl Fn(&K) -> Monomial,
) -> Vec<(RowKey, SparseRow)> {
    let mut keyed: Vec<(RowKey, SparseRow)> = rows
        .into_iter()
        .map(|((pi, k), row)| {
            (
                RowKey {
                    pair: pairs[pi],
                    monomial: monomial(&k),
                },
                row,
            )
        })
        .collect();
    keyed.sort_by(|a, b| {
        a.0.pair
            .cmp(&b.0.pair)
            .then_with(|| b.0.monomial.cmp(&a.0.monomial))
    });
    keyed
}

/// Divides out the content and fixes the sign of the first entry.
fn normalize_row(row: &SparseRow) -> SparseRow {
    let g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if g.is_zero() {
        return Vec::new();
    }
    let neg = row[0].1.is_negative();
    row.iter()
        .map(|(c, v)| {
            let v = v / &g;
            (*c, if neg { -v } else { v })
        })
        .collect()
}

/// A basis of the admissible closed-form tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuppertBasis {
    tuples: Vec<FormTuple>,
}

impl RuppertBasis {
    pub fn tuples(&self) -> &[FormTuple] {
        &self.tuples
    }

    pub fn dim(&self) -> usize {
        self.tuples.len()
    }

    /// `pr_var` of every basis tuple.
    pub fn components(&self, var: usize) -> Vec<Polynomial> {
        self.tuples.iter().map(|t| t.part(var).clone()).collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NullspaceOptions {
    pub method: NullspaceMethod,
    pub exec: Exec,
}

/// Exact basis of the solution space, in reduced echelon form over ℚ.
pub fn nullspace(sys: &RuppertSystem) -> Result<RuppertBasis> {
    nullspace_with(sys, NullspaceOptions::default())
}

pub fn nullspace_with(sys: &RuppertSystem, opts: NullspaceOptions) -> Result<RuppertBasis> {
    let vectors = sys.matrix.nullspace(opts.method, opts.exec);
    let tuples: Vec<FormTuple> = vectors.iter().map(|x| sys.tuple_from_vector(x)).collect();
    let checks = opts.exec.map(&tuples, |t| t.is_closed(&sys.base));
    if let Some(bad) = checks.iter().position(|ok| !ok) {
        return Err(Error::Internal(format!(
            "nullspace vector {bad} fails the closedness identity"
        )));
    }
    Ok(RuppertBasis { tuples })
}

/// Number of irreducible factors of `p` over ℂ.
///
/// Fails with [`Error::NotReduced`] when `p` has a repeated factor, since the
/// dimension count only holds for reduced polynomials.
pub fn count_factors(p: &Polynomial) -> Result<usize> {
    count_factors_with(p, NullspaceOptions::default())
}

pub fn count_factors_with(p: &Polynomial, opts: NullspaceOptions) -> Result<usize> {
    if p.is_constant() {
        return Err(Error::ConstantInput);
    }
    genericity::prepare(p)?;
    let sys = build_system_with(p, opts.exec)?;
    Ok(nullspace_with(&sys, opts)?.dim())
}

/// `true` iff `p` is irreducible over ℂ.
pub fn is_absolutely_irreducible(p: &Polynomial) -> Result<bool> {
    Ok(count_factors(p)? == 1)
}
