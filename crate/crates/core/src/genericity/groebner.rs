//! A small Buchberger engine under degrevlex.
//!
//! Normal selection strategy, the coprime-leading-monomial criterion and a
//! hard degree cap. It is sized for deciding whether a handful of
//! coefficient polynomials generate the unit ideal.

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

pub const DEFAULT_DEGREE_CAP: u32 = 40;

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// descending leading monomial. The unit ideal gives `[1]`, the zero
/// ideal gives `[]`.
pub fn groebner_basis(gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    groebner_basis_capped(gens, DEFAULT_DEGREE_CAP)
}

pub fn groebner_basis_capped(gens: &[Polynomial], cap: u32) -> Result<Vec<Polynomial>> {
    let nvars = match gens.first() {
        Some(g) => g.nvars(),
        None => return Ok(Vec::new()),
    };
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::ArityMismatch(nvars, g.nvars()));
        }
    }
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        if g.is_constant() {
            return Ok(vec![Polynomial::one(nvars)]);
        }
        check_cap(g, cap)?;
        basis.push(g.monic());
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // normal strategy: the pair with the smallest lcm goes first
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                pair_lcm(&basis, pairs[a])
                    .cmp(&pair_lcm(&basis, pairs[b]))
                    .then(pairs[a].cmp(&pairs[b]))
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(pick);
        let (li, lj) = (lead(&basis[i]), lead(&basis[j]));
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        if l.degree() > cap {
            return Err(Error::DegreeCapExceeded(cap));
        }
        let one = crate::poly::rat(1);
        let s = &basis[i].mul_term(&li.quotient_of(&l), &one)
            - &basis[j].mul_term(&lj.quotient_of(&l), &one);
        let r = s.reduce_by(&basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![Polynomial::one(nvars)]);
        }
        check_cap(&r, cap)?;
        let k = basis.len();
        basis.push(r.monic());
        pairs.extend((0..k).map(|i| (i, k)));
    }
    Ok(reduce_basis(basis))
}

fn lead(p: &Polynomial) -> &Monomial {
    p.leading_monomial().expect("basis elements are nonzero")
}

fn pair_lcm(basis: &[Polynomial], (i, j): (usize, usize)) -> Monomial {
    lead(&basis[i]).lcm(lead(&basis[j]))
}

fn check_cap(p: &Polynomial, cap: u32) -> Result<()> {
    match p.total_degree() {
        Some(d) if d > cap => Err(Error::DegreeCapExceeded(cap)),
        _ => Ok(()),
    }
}

/// Minimalises and interreduces a Gröbner basis.
fn reduce_basis(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lg = lead(g);
        let redundant = basis.iter().enumerate().any(|(h, other)| {
            let lo = lead(other);
            h != k && lo.divides(lg) && (lo != lg || h < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(h, _)| *h != k)
                .map(|(_, g)| g.clone())
                .collect();
            minimal[k].reduce_by(&others).monic()
        })
        .collect();
    out.sort_by(|a, b| lead(b).cmp(lead(a)));
    out
}
