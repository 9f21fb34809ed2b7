//! Multivariate gcd over ℚ: recursive content/primitive-part reduction with a
//! subresultant remainder sequence in the main variable.
//!
//! A heuristic integer gcd runs first. Its answer is only accepted when it
//! divides both inputs and the cofactors are provably coprime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::linalg::zp::{splitmix, Zp};

/// Greatest common divisor, normalized to be primitive over ℤ with a
/// positive leading coefficient. `gcd(p, 0)` is the normalization of `p`.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if p.nvars() != q.nvars() {
        return Err(Error::ArityMismatch(p.nvars(), q.nvars()));
    }
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    Ok(gcd_rec(&p.primitive(), &q.primitive()))
}

fn gcd_rec(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let n = a.nvars();
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(n);
    }
    if a.is_associate(b) {
        return a.primitive();
    }
    if coprime_certificate(a, b) {
        return Polynomial::one(n);
    }
    if let Some(g) = certified_heuristic_gcd(a, b) {
        return g;
    }

    // the gcd only involves variables common to both arguments
    let mut a = a.clone();
    let mut b = b.clone();
    for v in 0..n {
        let (ia, ib) = (a.contains_var(v), b.contains_var(v));
        if ia && !ib {
            a = content_in(&a, v);
        } else if ib && !ia {
            b = content_in(&b, v);
        }
        if a.is_constant() || b.is_constant() {
            return Polynomial::one(n);
        }
    }
    let common: Vec<usize> = (0..n).filter(|&v| a.contains_var(v)).collect();
    let Some(&v) = common.iter().min_by_key(|&&v| {
        let da = a.degree_in(v).unwrap_or(0);
        let db = b.degree_in(v).unwrap_or(0);
        (da.max(db), da.min(db), v)
    }) else {
        return Polynomial::one(n);
    };

    let ca = content_in(&a, v);
    let cb = content_in(&b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd_rec(&ca, &cb);
    let g = subresultant_gcd(&pa, &pb, v);
    (&c * &g).primitive()
}

/// gcd of the coefficients of `p` viewed as univariate in `var`.
fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let mut coeffs: Vec<Polynomial> = p
        .coefficients_in(var)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    // small ones first: the running gcd shrinks fastest that way
    coeffs.sort_by_key(|c| (c.total_degree(), c.len()));
    let mut g = Polynomial::zero(p.nvars());
    for c in &coeffs {
        g = gcd_rec(&g, c);
        if g.is_constant() {
            return Polynomial::one(p.nvars());
        }
    }
    g
}

type Uni = Vec<Polynomial>;

fn uni_degree(u: &Uni) -> usize {
    u.len() - 1
}

fn uni_trim(u: &mut Uni) {
    while u.len() > 1 && u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

fn uni_is_zero(u: &Uni) -> bool {
    u.iter().all(|c| c.is_zero())
}

/// Pseudo-remainder `lc(b)^(deg a − deg b + 1) · a mod b`.
fn prem(a: &Uni, b: &Uni) -> Uni {
    let db = uni_degree(b);
    let lb = &b[db];
    let mut r = a.clone();
    let mut e = uni_degree(a) as i64 - db as i64 + 1;
    while !uni_is_zero(&r) && uni_degree(&r) >= db {
        let dr = uni_degree(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            r[shift + i] = &r[shift + i] - &t;
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        if r.is_empty() {
            r.push(Polynomial::zero(lb.nvars()));
        }
        uni_trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn subresultant_gcd(pa: &Polynomial, pb: &Polynomial, var: usize) -> Polynomial {
    let n = pa.nvars();
    let (mut a, mut b): (Uni, Uni) = (pa.coefficients_in(var), pb.coefficients_in(var));
    if uni_degree(&a) < uni_degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Polynomial::one(n);
    let mut h = Polynomial::one(n);
    loop {
        let delta = (uni_degree(&a) - uni_degree(&b)) as u32;
        let r = prem(&a, &b);
        if uni_is_zero(&r) {
            break;
        }
        if uni_degree(&r) == 0 {
            return Polynomial::one(n);
        }
        a = b;
        let divisor = &g * &h.pow(delta);
        b = r
            .iter()
            .map(|c| {
                c.div_exact(&divisor)
                    .expect("subresultant division is exact")
            })
            .collect();
        g = a[uni_degree(&a)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact"),
        };
    }
    let last = Polynomial::from_coefficients_in(n, var, &b);
    let cont = content_in(&last, var);
    last.div_exact(&cont).expect("content divides").primitive()
}

/// Heuristic gcd of primitive integral `a`, `b`, returned only if certified.
fn certified_heuristic_gcd(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    let g = heuristic_gcd(a, b)?.primitive();
    if g.is_constant() {
        return None;
    }
    let qa = a.div_exact(&g)?;
    let qb = b.div_exact(&g)?;
    coprime_certificate(&qa, &qb).then_some(g)
}

const HEU_MAX_BITS: u64 = 20_000;
const HEU_ATTEMPTS: usize = 6;

fn max_abs(p: &Polynomial) -> BigInt {
    p.terms()
        .iter()
        .map(|(_, c)| c.numer().abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

fn integer_content(p: &Polynomial) -> BigInt {
    p.terms()
        .iter()
        .fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()))
}

/// GCDHEU on integral polynomials: evaluate the last variable at a large
/// integer `ξ`, recurse, and read the gcd back off its `ξ`-adic digits.
/// The result includes the integer content of the gcd.
fn heuristic_gcd(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    let n = a.nvars();
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let (ca, cb) = (integer_content(a), integer_content(b));
    let c = ca.gcd(&cb);
    if a.is_constant() || b.is_constant() {
        return Some(Polynomial::constant(n, Rational::from_integer(c)));
    }
    let a = a.scale(&Rational::from_integer(ca).recip());
    let b = b.scale(&Rational::from_integer(cb).recip());
    let v = (0..n)
        .rev()
        .find(|&v| a.contains_var(v) || b.contains_var(v))?;
    let deg = a.degree_in(v).unwrap_or(0).max(b.degree_in(v).unwrap_or(0)) as u64;
    let mut xi: BigInt = max_abs(&a).min(max_abs(&b)) * 2 + 29;
    for _ in 0..HEU_ATTEMPTS {
        if xi.bits() * (deg + 1) > HEU_MAX_BITS {
            return None;
        }
        let x = Rational::from_integer(xi.clone());
        let av = a.evaluate_partial(&[(v, x.clone())]).ok()?;
        let bv = b.evaluate_partial(&[(v, x)]).ok()?;
        if let Some(gamma) = heuristic_gcd(&av, &bv) {
            let g = from_digits(&gamma, &xi, v).primitive();
            if !g.is_zero() && g.divides(&a) && g.divides(&b) {
                return Some(g.scale(&Rational::from_integer(c)));
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// Reads each integer coefficient as symmetric base-`xi` digits, the `i`-th
/// digit becoming the coefficient of `x_var^i`.
fn from_digits(gamma: &Polynomial, xi: &BigInt, var: usize) -> Polynomial {
    let half = xi / 2;
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    for (m, c) in gamma.terms() {
        let mut rest = c.numer().clone();
        let mut i = 0u32;
        while !rest.is_zero() {
            let mut d = rest.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                terms.push((
                    m.with_exp(var, m.exps()[var] + i),
                    Rational::from_integer(d.clone()),
                ));
            }
            rest = (rest - d) / xi;
            i += 1;
        }
    }
    Polynomial::from_terms(gamma.nvars(), terms)
}

const CERT_PRIME: u64 = (1 << 61) - 1;

/// Cheap sufficient test for `gcd(a, b) = 1`.
///
/// For every variable `v` occurring in both, the other variables are
/// specialised at pseudo-random points modulo a prime where the leading
/// coefficient of `a` in `v` survives. Any common factor of positive degree
/// in `v` keeps its degree under such a specialisation, so a constant
/// univariate gcd rules it out. `true` is a proof; `false` means "unknown".
pub fn coprime_certificate(a: &Polynomial, b: &Polynomial) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    if a.is_constant() || b.is_constant() {
        return true;
    }
    let a = a.primitive();
    let b = b.primitive();
    let f = Zp::new(CERT_PRIME);
    let n = a.nvars();
    let mut state = 0x5eed_u64 ^ (a.len() as u64) << 32 ^ b.len() as u64;
    for v in 0..n {
        if !(a.contains_var(v) && b.contains_var(v)) {
            continue;
        }
        let mut ok = false;
        for _attempt in 0..3 {
            let point: Vec<u64> = (0..n).map(|_| splitmix(&mut state) % CERT_PRIME).collect();
            let ua = specialise(&a, v, &point, f);
            if ua.len() as u32 != a.degree_in(v).unwrap() + 1 || ua.last() == Some(&0) {
                continue;
            }
            let ub = specialise(&b, v, &point, f);
            if f.poly_gcd(&ua, &ub).len() == 1 {
                ok = true;
                break;
            }
        }
        if !ok {
            return false;
        }
    }
    true
}

/// Dense image of an integral polynomial in `ℤ_p[x_v]` after evaluating the
/// other variables at `point`.
fn specialise(p: &Polynomial, v: usize, point: &[u64], f: Zp) -> Vec<u64> {
    let deg = p.degree_in(v).unwrap_or(0) as usize;
    let mut out = vec![0u64; deg + 1];
    for (m, c) in p.terms() {
        debug_assert!(c.is_integer());
        let mut t = f.from_bigint(c.numer());
        for (w, &e) in m.exps().iter().enumerate() {
            if w != v && e > 0 {
                t = f.mul(t, f.pow(point[w], e as u64));
            }
        }
        let k = m.exps()[v] as usize;
        out[k] = f.add(out[k], t);
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}
