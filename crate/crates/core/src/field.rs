//! Coefficient fields: arbitrary-precision rationals and prime fields `F_p`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};

/// Default prime used for fast runs.
pub const DEFAULT_PRIME: u32 = 32003;

/// Runtime description of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    Rationals,
    Prime(u32),
}

impl CoefficientField {
    pub fn validate(self) -> Result<Self> {
        match self {
            CoefficientField::Rationals => Ok(self),
            CoefficientField::Prime(p) => {
                if (p as u64) >= (1u64 << 31) {
                    return Err(AlgebraError::InvalidField(format!(
                        "prime {p} must be below 2^31"
                    )));
                }
                if !is_prime(p) {
                    return Err(AlgebraError::InvalidField(format!("{p} is not prime")));
                }
                Ok(self)
            }
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "QQ"),
            CoefficientField::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A (commutative) field whose elements are plain values; the field object
/// carries any runtime parameters such as the characteristic.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn descriptor(&self) -> CoefficientField;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    /// Canonical rational representative (symmetric residue for `F_p`).
    fn to_rational(&self, a: &Self::Elem) -> BigRational;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn format(&self, a: &Self::Elem) -> String {
        format_rational(&self.to_rational(a))
    }
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> CoefficientField {
        CoefficientField::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

/// The prime field `F_p` for a prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        CoefficientField::Prime(p).validate()?;
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u32().expect("residue fits in u32")
    }

    fn pow(&self, base: u32, mut e: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn descriptor(&self) -> CoefficientField {
        CoefficientField::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p as u64 - 2)
    }
    fn from_i64(&self, n: i64) -> u32 {
        (n.rem_euclid(self.p as i64)) as u32
    }
    fn from_rational(&self, q: &BigRational) -> Result<u32> {
        let num = self.reduce_big(q.numer());
        let den = self.reduce_big(q.denom());
        if den == 0 {
            return Err(AlgebraError::InvalidArgument(format!(
                "denominator of {} vanishes modulo {}",
                format_rational(q),
                self.p
            )));
        }
        Ok(self.div(&num, &den))
    }
    fn to_rational(&self, a: &u32) -> BigRational {
        let v = if *a as u64 * 2 > self.p as u64 {
            *a as i64 - self.p as i64
        } else {
            *a as i64
        };
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Parses `a` or `a/b` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

pub(crate) fn rational_is_negative(q: &BigRational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(matches!(
            PrimeField::new(32001),
            Err(AlgebraError::InvalidField(_))
        ));
        assert!(PrimeField::new(1).is_err());
        assert!(CoefficientField::Prime(2147483647).validate().is_ok());
        assert!(CoefficientField::Prime(2147483659).validate().is_err());
    }

    #[test]
    fn prime_field_inverse_roundtrip() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101u32 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn symmetric_representatives() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.format(&6), "-1");
        assert_eq!(f.format(&3), "3");
        assert_eq!(f.format(&4), "-3");
        let half = f.from_rational(&parse_rational("1/2").unwrap()).unwrap();
        assert_eq!(f.mul(&half, &2), 1);
    }

    #[test]
    fn rational_denominator_vanishing_mod_p() {
        let f = PrimeField::new(5).unwrap();
        assert!(f.from_rational(&parse_rational("1/5").unwrap()).is_err());
    }
}
