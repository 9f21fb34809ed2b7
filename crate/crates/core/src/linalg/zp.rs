//! Word-size prime field arithmetic.

use num_bigint::{BigInt, Sign};
use num_traits::ToPrimitive;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp {
    p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 63));
        Zp { p }
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_bigint(self, x: &BigInt) -> u64 {
        let r = (x.magnitude() % self.p).to_u64().expect("residue fits");
        if x.sign() == Sign::Minus {
            self.neg(r)
        } else {
            r
        }
    }

    pub fn from_i64(self, x: i64) -> u64 {
        let r = x.unsigned_abs() % self.p;
        if x < 0 {
            self.neg(r)
        } else {
            r
        }
    }

    /// Dense univariate gcd (coefficients low to high), made monic.
    pub fn poly_gcd(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        if let Some(&lc) = a.last() {
            let inv = self.inv(lc);
            for c in a.iter_mut() {
                *c = self.mul(*c, inv);
            }
        }
        a
    }

    fn poly_rem(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        while r.len() > db {
            let lead = *r.last().unwrap();
            if lead != 0 {
                let f = self.mul(lead, inv);
                let shift = r.len() - 1 - db;
                for (i, &bc) in b.iter().enumerate() {
                    r[shift + i] = self.sub(r[shift + i], self.mul(f, bc));
                }
            }
            r.pop();
        }
        trim(r)
    }
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^62, largest first.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime_u64(n) {
            n -= 2;
        }
        let p = n;
        n -= 2;
        Some(p)
    })
}

/// splitmix64 step, used wherever a fixed reproducible stream of field
/// elements is needed without pulling in a seeded RNG.
pub fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64((1 << 62) - 1));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        let ps: Vec<u64> = primes().take(3).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| is_prime_u64(p) && p < 1 << 62));
    }

    #[test]
    fn field_ops() {
        let f = Zp::new(1_000_000_007);
        let a = 123_456_789;
        assert_eq!(f.mul(a, f.inv(a)), 1);
        assert_eq!(f.add(f.neg(a), a), 0);
        assert_eq!(f.from_i64(-1), 1_000_000_006);
        assert_eq!(
            f.from_bigint(&BigInt::from(-1_000_000_008i64)),
            1_000_000_006
        );
    }

    #[test]
    fn univariate_gcd() {
        let f = Zp::new(101);
        // (x+1)(x+2) and (x+1)(x+3)
        let a = [2, 3, 1];
        let b = [3, 4, 1];
        assert_eq!(f.poly_gcd(&a, &b), vec![1, 1]);
        assert_eq!(f.poly_gcd(&[1, 1], &[2, 1]), vec![1]);
    }
}
