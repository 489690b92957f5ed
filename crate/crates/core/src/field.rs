//! Exact scalars over the rationals or a prime field GF(p).
//!
//! All linear algebra in the crate is exact. Prime-field residues are kept in
//! `[0, p)` with `p < 2^32`, so a product of two residues fits in a `u64`.
//! Rationals are always in lowest terms with a positive denominator, which
//! `num_rational::BigRational` maintains for us.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Largest socle degree handled by the toolkit; the characteristic must exceed it.
pub const MAX_SOCLE_DEGREE: u64 = 5;

/// Half-width of the integer range used for random rational coefficients.
pub const RATIONAL_SAMPLE_BOUND: i64 = 1_000_000;

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// GF(p) for a prime `5 < p < 2^32`.
    pub fn prime(p: u64) -> Result<Field> {
        if p <= MAX_SOCLE_DEGREE || p >= 1 << 32 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Field::Prime(p))
    }

    /// The modulus, or 0 for the rationals.
    pub fn modulus(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Characteristic exceeds `degree`, so `degree!` is invertible.
    pub fn supports_degree(&self, degree: u32) -> bool {
        match self {
            Field::Rational => true,
            Field::Prime(p) => u64::from(degree) < *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => {
                let m = *p as i128;
                let r = (v as i128).rem_euclid(m) as u64;
                Scalar::Prime(Fp {
                    value: r,
                    modulus: *p,
                })
            }
        }
    }

    pub fn from_u64(&self, v: u64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Prime(Fp {
                value: v % p,
                modulus: *p,
            }),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => Scalar::Prime(Fp {
                value: reduce_bigint(v, *p),
                modulus: *p,
            }),
        }
    }

    /// Maps `num/den` into this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(_) => {
                let d = self.from_bigint(den);
                let n = self.from_bigint(num);
                Ok(&n * &d.inv()?)
            }
        }
    }

    /// Parses a scalar: `num/den` or an integer for the rationals, a decimal
    /// residue (any integer, reduced) for GF(p).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Syntax {
            pos: 0,
            msg: format!("invalid scalar {text:?}"),
        };
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(text).map_err(|_| bad())?, BigInt::one()),
        };
        self.from_ratio(&num, &den)
    }

    /// Uniform element; over the rationals an integer in `[-10^6, 10^6]`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Rational => {
                self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
            }
            Field::Prime(p) => Scalar::Prime(Fp {
                value: rng.gen_range(0..*p),
                modulus: *p,
            }),
        }
    }

    /// Uniform nonzero element, by rejection.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        match s.trim() {
            "q" | "Q" => Ok(Field::Rational),
            other => {
                let m = other
                    .strip_prefix("p:")
                    .ok_or_else(|| Error::InvalidInput(format!("unknown field {other:?}")))?;
                let p = m
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("bad modulus {m:?}")))?;
                Field::prime(p)
            }
        }
    }
}

impl TryFrom<String> for Field {
    type Error = Error;
    fn try_from(s: String) -> Result<Field> {
        s.parse()
    }
}

impl From<Field> for String {
    fn from(f: Field) -> String {
        f.to_string()
    }
}

/// A residue modulo a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// Modular exponentiation for `p < 2^32`.
pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue via Fermat.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime(Fp),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime(x) => Field::Prime(x.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime(x) => x.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime(x) => x.value == 1,
        }
    }

    /// True for rationals below zero; prime-field elements are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Prime(_) => false,
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime(a), Scalar::Prime(b)) => Scalar::Prime(Fp {
                value: (a.value + b.value) % a.modulus,
                modulus: a.modulus,
            }),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime(a), Scalar::Prime(b)) => Scalar::Prime(Fp {
                value: a.value * b.value % a.modulus,
                modulus: a.modulus,
            }),
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.try_mul(&other.inv()?)
    }

    /// Equality that refuses to compare elements of different fields.
    pub fn try_eq(&self, other: &Scalar) -> Result<bool> {
        self.check(other)?;
        Ok(self == other)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime(x) => Scalar::Prime(Fp {
                value: inv_mod(x.value, x.modulus),
                modulus: x.modulus,
            }),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime(x) => Scalar::Prime(Fp {
                value: (x.modulus - x.value) % x.modulus,
                modulus: x.modulus,
            }),
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(num_traits::pow(q.clone(), exp as usize)),
            Scalar::Prime(x) => Scalar::Prime(Fp {
                value: pow_mod(x.value, u64::from(exp), x.modulus),
                modulus: x.modulus,
            }),
        }
    }

    /// Numerator and denominator of a rational, or `(residue, 1)` in GF(p).
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rational(q) => (q.numer().clone(), q.denom().clone()),
            Scalar::Prime(x) => (BigInt::from(x.value), BigInt::one()),
        }
    }

    /// The residue for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Prime(x) => Some(x.value),
            Scalar::Rational(_) => None,
        }
    }

    /// `|self|` for rationals; identity in GF(p).
    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q.abs()),
            other => other.clone(),
        }
    }

    /// Sign of the numerator, used by the printer.
    pub fn sign(&self) -> Sign {
        match self {
            Scalar::Rational(q) => q.numer().sign(),
            Scalar::Prime(x) if x.value == 0 => Sign::NoSign,
            Scalar::Prime(_) => Sign::Plus,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Prime(x) => write!(f, "{}", x.value),
        }
    }
}

// Operator impls panic on mixed fields; callers check ring compatibility first.
impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("mixed fields")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("mixed fields")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("mixed fields")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}
