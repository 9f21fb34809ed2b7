//! Exact nullspaces of sparse integer matrices.
//!
//! Two independent routes produce the same canonical basis (the one read off
//! the reduced row echelon form: one vector per free column, with a 1 in that
//! column and 0 in every other free column):
//!
//! * [`NullspaceMethod::FractionFree`] eliminates over ℤ, cross-multiplying
//!   rows and dividing out row content after every step, then
//!   back-substitutes over ℚ.
//! * [`NullspaceMethod::Modular`] eliminates modulo word-size primes, lifts
//!   the basis by CRT and rational reconstruction, and stops once the lifted
//!   vectors annihilate the matrix exactly. Since rank mod p never exceeds
//!   the rank over ℚ, `ncols − rank_p` exact independent solutions pin the
//!   dimension, and the echelon shape of the solutions pins the pivots.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::zp::{primes, Zp};
use crate::exec::Exec;
use crate::poly::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NullspaceMethod {
    #[default]
    Modular,
    FractionFree,
}

pub type SparseRow = Vec<(u32, BigInt)>;

/// Row-major sparse integer matrix; every row is sorted by column and holds
/// no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(ncols: usize, rows: Vec<SparseRow>) -> Self {
        debug_assert!(rows.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(rows
            .iter()
            .all(|r| r.iter().all(|(c, v)| (*c as usize) < ncols && !v.is_zero())));
        SparseMatrix { ncols, rows }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Whether `x` is an exact solution of `self · x = 0`.
    pub fn annihilates(&self, x: &[Rational], exec: Exec) -> bool {
        let den = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let xi: Vec<BigInt> = x.iter().map(|v| v.numer() * (&den / v.denom())).collect();
        exec.map(&self.rows, |row| {
            row.iter()
                .fold(BigInt::zero(), |acc, (c, v)| acc + v * &xi[*c as usize])
                .is_zero()
        })
        .into_iter()
        .all(|ok| ok)
    }

    pub fn nullspace(&self, method: NullspaceMethod, exec: Exec) -> Vec<Vec<Rational>> {
        match method {
            NullspaceMethod::FractionFree => self.nullspace_fraction_free(),
            NullspaceMethod::Modular => self.nullspace_modular(exec),
        }
    }

    /// Rows ordered shortest first; ties keep input order.
    fn elimination_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i].len());
        order
    }

    pub fn nullspace_fraction_free(&self) -> Vec<Vec<Rational>> {
        let n = self.ncols;
        let mut pivots: Vec<Option<SparseRow>> = vec![None; n];
        for i in self.elimination_order() {
            let mut acc: BTreeMap<u32, BigInt> = self.rows[i].iter().cloned().collect();
            let mut cursor = 0u32;
            while let Some(c) = acc
                .range(cursor..)
                .map(|(c, _)| *c)
                .find(|c| pivots[*c as usize].is_some())
            {
                let prow = pivots[c as usize].as_ref().unwrap();
                let a = acc[&c].clone();
                let pv = &prow[0].1;
                let g = a.gcd(pv);
                let scale_acc = pv / &g;
                let scale_piv = &a / &g;
                if !scale_acc.is_one() {
                    for v in acc.values_mut() {
                        *v *= &scale_acc;
                    }
                }
                for (pc, pval) in prow {
                    let e = acc.entry(*pc).or_insert_with(BigInt::zero);
                    *e -= &scale_piv * pval;
                    if e.is_zero() {
                        acc.remove(pc);
                    }
                }
                cursor = c + 1;
            }
            if acc.is_empty() {
                continue;
            }
            let content = acc.values().fold(BigInt::zero(), |g, v| g.gcd(v));
            let sign_neg = acc.values().next().unwrap().is_negative();
            let row: SparseRow = acc
                .into_iter()
                .map(|(c, v)| {
                    let v = v / &content;
                    (c, if sign_neg { -v } else { v })
                })
                .collect();
            let lead = row[0].0 as usize;
            pivots[lead] = Some(row);
        }
        back_substitute_q(n, &pivots)
    }

    fn nullspace_modular(&self, exec: Exec) -> Vec<Vec<Rational>> {
        let n = self.ncols;
        let order = self.elimination_order();
        let mut best: Option<ModImage> = None;
        let mut residues: Vec<Vec<BigInt>> = Vec::new();
        let mut modulus = BigInt::one();
        let mut prime_iter = primes();
        loop {
            let batch: Vec<u64> = (&mut prime_iter).take(exec.width()).collect();
            let images = exec.map(&batch, |&p| self.image_mod(p, &order));
            for img in images {
                let better = match &best {
                    None => true,
                    Some(b) => match img.pivots.len().cmp(&b.pivots.len()) {
                        std::cmp::Ordering::Greater => true,
                        std::cmp::Ordering::Less => false,
                        std::cmp::Ordering::Equal => img.pivots < b.pivots,
                    },
                };
                let same = best.as_ref().is_some_and(|b| b.pivots == img.pivots);
                if better && !same {
                    residues = img
                        .basis
                        .iter()
                        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                        .collect();
                    modulus = BigInt::from(img.prime);
                    best = Some(img);
                } else if same {
                    crt_merge(&mut residues, &modulus, &img.basis, img.prime);
                    modulus *= img.prime;
                }
            }
            if residues.is_empty() {
                // full column rank: the nullspace is trivial
                return Vec::new();
            }
            if let Some(candidate) = reconstruct_all(&residues, &modulus) {
                let ok = candidate.iter().all(|x| self.annihilates(x, exec));
                if ok {
                    debug_assert_eq!(candidate.len(), n - best.as_ref().unwrap().pivots.len());
                    return candidate;
                }
            }
        }
    }

    fn image_mod(&self, p: u64, order: &[usize]) -> ModImage {
        let f = Zp::new(p);
        let n = self.ncols;
        let mut pivots: Vec<Option<Vec<(u32, u64)>>> = vec![None; n];
        let mut acc = vec![0u64; n];
        for &i in order {
            let row = &self.rows[i];
            if row.is_empty() {
                continue;
            }
            let first = row[0].0 as usize;
            for (c, v) in row {
                acc[*c as usize] = f.from_bigint(v);
            }
            for c in first..n {
                let a = acc[c];
                if a == 0 {
                    continue;
                }
                if let Some(prow) = &pivots[c] {
                    // pivot rows are monic
                    for &(pc, pv) in prow {
                        let pc = pc as usize;
                        acc[pc] = f.sub(acc[pc], f.mul(a, pv));
                    }
                }
            }
            let mut new_row = Vec::new();
            for (c, slot) in acc.iter_mut().enumerate().skip(first) {
                if *slot != 0 {
                    new_row.push((c as u32, *slot));
                    *slot = 0;
                }
            }
            if let Some(&(lead, lv)) = new_row.first() {
                let inv = f.inv(lv);
                for e in new_row.iter_mut() {
                    e.1 = f.mul(e.1, inv);
                }
                pivots[lead as usize] = Some(new_row);
            }
        }
        let pivot_cols: Vec<usize> = (0..n).filter(|&c| pivots[c].is_some()).collect();
        let basis = back_substitute_mod(n, &pivots, f);
        ModImage {
            prime: p,
            pivots: pivot_cols,
            basis,
        }
    }
}

struct ModImage {
    prime: u64,
    pivots: Vec<usize>,
    basis: Vec<Vec<u64>>,
}

fn back_substitute_mod(n: usize, pivots: &[Option<Vec<(u32, u64)>>], f: Zp) -> Vec<Vec<u64>> {
    let free: Vec<usize> = (0..n).filter(|&c| pivots[c].is_none()).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0u64; n];
            x[fc] = 1;
            for c in (0..n).rev() {
                if let Some(row) = &pivots[c] {
                    let mut s = 0u64;
                    for &(cc, v) in &row[1..] {
                        let xv = x[cc as usize];
                        if xv != 0 {
                            s = f.add(s, f.mul(v, xv));
                        }
                    }
                    x[c] = f.neg(s);
                }
            }
            x
        })
        .collect()
}

fn back_substitute_q(n: usize, pivots: &[Option<SparseRow>]) -> Vec<Vec<Rational>> {
    let free: Vec<usize> = (0..n).filter(|&c| pivots[c].is_none()).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![Rational::zero(); n];
            x[fc] = Rational::one();
            for c in (0..n).rev() {
                if let Some(row) = &pivots[c] {
                    let mut s = Rational::zero();
                    for (cc, v) in &row[1..] {
                        let xv = &x[*cc as usize];
                        if !xv.is_zero() {
                            s += xv * Rational::from_integer(v.clone());
                        }
                    }
                    x[c] = -s / Rational::from_integer(row[0].1.clone());
                }
            }
            x
        })
        .collect()
}

fn crt_merge(residues: &mut [Vec<BigInt>], modulus: &BigInt, image: &[Vec<u64>], p: u64) {
    // x ≡ r (mod M), x ≡ s (mod p)  ⇒  x = r + M·((s − r)·M⁻¹ mod p)
    let f = Zp::new(p);
    let m_mod = f.from_bigint(modulus);
    let m_inv = f.inv(m_mod);
    for (rv, sv) in residues.iter_mut().zip(image) {
        for (r, &s) in rv.iter_mut().zip(sv) {
            let r_mod = f.from_bigint(r);
            if r_mod == s {
                continue;
            }
            let t = f.mul(f.sub(s, r_mod), m_inv);
            *r += modulus * BigInt::from(t);
        }
    }
}

/// Rational reconstruction of every residue; `None` if any entry fails.
fn reconstruct_all(residues: &[Vec<BigInt>], modulus: &BigInt) -> Option<Vec<Vec<Rational>>> {
    let bound = (modulus / BigInt::from(2)).sqrt();
    residues
        .iter()
        .map(|v| {
            v.iter()
                .map(|r| rational_reconstruct(r, modulus, &bound))
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}

/// Finds `a/b ≡ r (mod m)` with `|a|, b ≤ bound` by the half extended
/// Euclidean algorithm.
pub fn rational_reconstruct(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rational> {
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}
