//! Arithmetic in the prime field `F_p`.
//!
//! Elements are plain `u64` residues in `[0, p)`; every operation takes the
//! field handle explicitly so values stay `Copy` and matrices stay flat.
//! The default modulus is the Mersenne prime `2^31 - 1`, large enough that
//! random evaluations behave like generic characteristic-0 data at desk scale.

use rand::Rng;

use crate::error::{Error, Result};

/// Default modulus: the Mersenne prime `2^31 - 1`.
pub const DEFAULT_MODULUS: u64 = (1 << 31) - 1;

/// Smallest admissible modulus; genericity estimates need a large field.
const MIN_MODULUS: u64 = 1 << 20;

/// A prime field `F_p`, `p > 2^20`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_MODULUS }
    }
}

impl PrimeField {
    /// Builds the field, rejecting composite or too-small moduli.
    pub fn new(p: u64) -> Result<Self> {
        if p <= MIN_MODULUS {
            return Err(Error::ModulusTooSmall(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    /// `base^exp` by square-and-multiply.
    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut base = base % self.p;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero (callers pivot on nonzero entries).
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        // Extended Euclid on (a, p).
        let (mut r0, mut r1) = (a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        s0.rem_euclid(self.p as i128) as u64
    }

    /// Uniform element of `[0, p)`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    /// Uniform nonzero element.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.p)
    }
}

/// Deterministic Miller-Rabin for `u64` (the listed bases are exact below 2^64).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn default_modulus_is_prime() {
        assert!(is_prime_u64(DEFAULT_MODULUS));
        PrimeField::new(DEFAULT_MODULUS).unwrap();
    }

    #[test]
    fn rejects_composite_and_small() {
        assert!(matches!(PrimeField::new(1 << 22), Err(Error::NotPrime(_))));
        assert!(matches!(PrimeField::new(97), Err(Error::ModulusTooSmall(97))));
    }

    #[test]
    fn field_axioms_spot_checks() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = f.random(&mut rng);
            let b = f.random_nonzero(&mut rng);
            assert_eq!(f.add(a, f.neg(a)), 0);
            assert_eq!(f.mul(b, f.inv(b)), 1);
            assert_eq!(f.sub(f.add(a, b), b), a);
        }
        assert_eq!(f.pow(3, DEFAULT_MODULUS - 1), 1);
    }

    #[test]
    fn reduce_negative_integers() {
        let f = PrimeField::default();
        assert_eq!(f.reduce_i64(-1), DEFAULT_MODULUS - 1);
        assert_eq!(f.reduce_i64(0), 0);
        assert_eq!(f.reduce_i64(DEFAULT_MODULUS as i64 + 5), 5);
    }
}
