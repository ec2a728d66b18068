//! Coefficient rings: exact rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Rationals,
    Prime(u64),
}

impl Ring {
    pub fn prime(p: u64) -> Result<Ring> {
        if p < 2 || !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(Ring::Prime(p))
    }

    /// Brings a rational into canonical form: itself over Q, the residue in
    /// `0..p` over a prime field.
    pub fn reduce(&self, x: &BigRational) -> Result<BigRational> {
        match self {
            Ring::Rationals => Ok(x.clone()),
            Ring::Prime(p) => {
                let p = BigInt::from(*p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::Invalid(format!("{x} has no value modulo {p}")));
                }
                let inv = mod_inverse(&den, &p);
                let num = (x.numer().mod_floor(&p) * inv).mod_floor(&p);
                Ok(BigRational::from_integer(num))
            }
        }
    }

    pub fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.norm(a + b)
    }

    pub fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.norm(a * b)
    }

    pub fn neg(&self, a: &BigRational) -> BigRational {
        self.norm(-a)
    }

    pub fn inv(&self, a: &BigRational) -> BigRational {
        debug_assert!(!a.is_zero());
        match self {
            Ring::Rationals => a.recip(),
            Ring::Prime(p) => {
                let p = BigInt::from(*p);
                BigRational::from_integer(mod_inverse(&a.numer().mod_floor(&p), &p))
            }
        }
    }

    pub fn from_int(&self, n: &BigInt) -> BigRational {
        self.norm(BigRational::from_integer(n.clone()))
    }

    fn norm(&self, x: BigRational) -> BigRational {
        match self {
            Ring::Rationals => x,
            Ring::Prime(_) => self.reduce(&x).expect("prime field values have unit denominators"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rationals => f.write_str("Q"),
            Ring::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(p)
}

/// Field operations used by the elimination routines.
pub trait Field {
    type E: Clone + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn sub_mul(&self, a: &Self::E, c: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn from_rational(&self, x: &BigRational) -> Self::E;
}

pub struct Q;

impl Field for Q {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sub_mul(&self, a: &BigRational, c: &BigRational, b: &BigRational) -> BigRational {
        a - c * b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_rational(&self, x: &BigRational) -> BigRational {
        x.clone()
    }
}

/// A prime field with machine-word residues.
pub struct Fp(pub u64);

impl Field for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        let p = self.0 as u128;
        let cb = (*c as u128 * *b as u128) % p;
        ((*a as u128 + p - cb) % p) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2).
        let mut base = *a as u128;
        let p = self.0 as u128;
        let mut e = self.0 - 2;
        let mut acc = 1u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u64
    }
    fn from_rational(&self, x: &BigRational) -> u64 {
        let r = Ring::Prime(self.0).reduce(x).expect("denominator invertible modulo p");
        let n: BigInt = r.to_integer();
        u64::try_from(n).expect("residue fits a word")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn prime_reduction() {
        let r = Ring::prime(101).unwrap();
        assert_eq!(r.reduce(&q(-1, 1)).unwrap(), q(100, 1));
        assert_eq!(r.reduce(&q(1, 2)).unwrap(), q(51, 1));
        assert!(r.reduce(&q(1, 101)).is_err());
        assert!(Ring::prime(100).is_err());
    }

    #[test]
    fn fp_inverse() {
        let f = Fp(101);
        for a in 1..101 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }
}
