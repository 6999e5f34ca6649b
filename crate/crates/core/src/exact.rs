//! Exact values of the form `q · π^p · √r`.
//!
//! Every invariant the engine reports is a rational multiple of `1`, `π` or
//! `π²`, possibly times a single square root. Keeping that shape explicit makes
//! equality and ordering decidable without any floating point: two values with
//! the same power of π are compared by sign and then by their squares.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest power of π the representation admits.
pub const MAX_PI_POWER: u8 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactReal {
    coeff: BigRational,
    pi_power: u8,
    radicand: u64,
}

/// Splits `n` into `(s, r)` with `n = s² · r` and `r` square-free.
pub fn square_free_split(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let mut rest = n;
    let mut outside = 1u64;
    let mut radicand = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            outside *= p;
        }
        if e % 2 == 1 {
            radicand *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    radicand *= rest;
    (outside, radicand)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ratu(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactReal {
    pub fn new(coeff: BigRational, pi_power: u8, radicand: u64) -> Result<Self> {
        if pi_power > MAX_PI_POWER {
            return Err(Error::IncomparableValues(format!(
                "π power {pi_power} exceeds {MAX_PI_POWER}"
            )));
        }
        if radicand == 0 {
            return Ok(Self::zero());
        }
        let (outside, radicand) = square_free_split(radicand);
        let coeff = coeff * ratu(outside);
        Ok(Self::canonical(coeff, pi_power, radicand))
    }

    fn canonical(coeff: BigRational, pi_power: u8, radicand: u64) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Self { coeff, pi_power, radicand }
        }
    }

    pub fn zero() -> Self {
        Self { coeff: BigRational::zero(), pi_power: 0, radicand: 1 }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::canonical(rat(n), 0, 1)
    }

    pub fn rational(q: BigRational) -> Self {
        Self::canonical(q, 0, 1)
    }

    /// `n/d · π^p · √r`.
    pub fn from_parts(num: i64, den: i64, pi_power: u8, radicand: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::UnsupportedParameter("zero denominator".into()));
        }
        Self::new(BigRational::new(num.into(), den.into()), pi_power, radicand)
    }

    /// `q · π^p` with `q` rational.
    pub fn pi_multiple(q: BigRational, pi_power: u8) -> Result<Self> {
        Self::new(q, pi_power, 1)
    }

    /// The non-negative square root `√q · π^p` of a non-negative rational `q`.
    pub fn sqrt_rational(q: &BigRational, pi_power: u8) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::IncomparableValues("square root of a negative rational".into()));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // √(n/d) = √(n·d) / d
        let n = q.numer();
        let d = q.denom();
        let product = (n * d)
            .to_u64()
            .ok_or_else(|| Error::IncomparableValues("radicand exceeds u64".into()))?;
        let coeff = BigRational::new(BigInt::one(), d.clone());
        Self::new(coeff, pi_power, product)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn pi_power(&self) -> u8 {
        self.pi_power
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn signum(&self) -> i8 {
        if self.coeff.is_positive() {
            1
        } else if self.coeff.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, q: &BigRational) -> Self {
        Self::canonical(&self.coeff * q, self.pi_power, self.radicand)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_power != other.pi_power || self.radicand != other.radicand {
            return Err(Error::IncomparableValues(format!(
                "cannot add {self} and {other}: shapes differ"
            )));
        }
        Ok(Self::canonical(&self.coeff + &other.coeff, self.pi_power, self.radicand))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let pi_power = self.pi_power + other.pi_power;
        let radicand = self
            .radicand
            .checked_mul(other.radicand)
            .ok_or_else(|| Error::IncomparableValues("radicand overflow".into()))?;
        Self::new(&self.coeff * &other.coeff, pi_power, radicand)
    }

    pub fn square(&self) -> Result<Self> {
        self.checked_mul(self)
    }

    /// Non-negative square root of a value `q · π^(2j)` with no radical.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::IncomparableValues(format!("square root of negative {self}")));
        }
        if self.radicand != 1 || self.pi_power % 2 != 0 {
            return Err(Error::IncomparableValues(format!(
                "square root of {self} leaves the single-radical form"
            )));
        }
        Self::sqrt_rational(&self.coeff, self.pi_power / 2)
    }

    /// Exact comparison. Values must share their power of π unless one of them is zero.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        if !self.is_zero() && !other.is_zero() && self.pi_power != other.pi_power {
            return Err(Error::IncomparableValues(format!(
                "cannot compare {self} with {other}: π powers differ"
            )));
        }
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return Ok(sa.cmp(&sb));
        }
        if sa == 0 {
            return Ok(Ordering::Equal);
        }
        // Same sign: compare q²·r, reversed when negative.
        let sq = |v: &Self| &v.coeff * &v.coeff * ratu(v.radicand);
        let mag = sq(self).cmp(&sq(other));
        Ok(if sa > 0 { mag } else { mag.reverse() })
    }

    pub fn le(&self, other: &Self) -> Result<bool> {
        Ok(self.compare(other)? != Ordering::Greater)
    }

    /// Decimal approximation for display hints only.
    pub fn approx(&self) -> f64 {
        let q = self.coeff.numer().to_f64().unwrap_or(f64::NAN)
            / self.coeff.denom().to_f64().unwrap_or(f64::NAN);
        q * std::f64::consts::PI.powi(self.pi_power as i32) * (self.radicand as f64).sqrt()
    }

    /// Integer numerator and denominator when they fit in `i64`.
    pub fn coeff_parts(&self) -> Option<(i64, i64)> {
        Some((self.coeff.numer().to_i64()?, self.coeff.denom().to_i64()?))
    }
}

impl std::ops::Neg for &ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        ExactReal::canonical(-&self.coeff, self.pi_power, self.radicand)
    }
}

impl std::ops::Neg for ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        -&self
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let has_factor = self.pi_power > 0 || self.radicand != 1;
        let c = &self.coeff;
        if c.is_integer() {
            let n = c.numer();
            if has_factor && n.abs().is_one() {
                if n.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{n}")?;
            }
        } else if has_factor {
            write!(f, "({c})")?;
        } else {
            write!(f, "{c}")?;
        }
        match self.pi_power {
            0 => {}
            1 => write!(f, "π")?,
            _ => write!(f, "π²")?,
        }
        if self.radicand != 1 {
            write!(f, "√{}", self.radicand)?;
        }
        Ok(())
    }
}

fn big_to_field<S: SerializeStruct>(
    s: &mut S,
    key: &'static str,
    v: &BigInt,
) -> std::result::Result<(), S::Error> {
    match v.to_i64() {
        Some(n) => s.serialize_field(key, &n),
        None => s.serialize_field(key, &v.to_string()),
    }
}

impl Serialize for ExactReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ExactReal", 4)?;
        big_to_field(&mut s, "coeff_num", self.coeff.numer())?;
        big_to_field(&mut s, "coeff_den", self.coeff.denom())?;
        s.serialize_field("pi_power", &self.pi_power)?;
        s.serialize_field("radicand", &self.radicand)?;
        s.end()
    }
}

/// Closed interval with exactly ordered endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactInterval {
    lower: ExactReal,
    upper: ExactReal,
}

impl ExactInterval {
    pub fn new(lower: ExactReal, upper: ExactReal) -> Result<Self> {
        if lower.compare(&upper)? == Ordering::Greater {
            return Err(Error::IncomparableValues(format!(
                "interval endpoints out of order: [{lower}, {upper}]"
            )));
        }
        Ok(Self { lower, upper })
    }

    pub fn point(v: ExactReal) -> Self {
        Self { lower: v.clone(), upper: v }
    }

    pub fn lower(&self) -> &ExactReal {
        &self.lower
    }

    pub fn upper(&self) -> &ExactReal {
        &self.upper
    }

    pub fn is_degenerate(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, v: &ExactReal) -> Result<bool> {
        Ok(self.lower.le(v)? && v.le(&self.upper)?)
    }
}

impl fmt::Display for ExactInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "{}", self.lower)
        } else {
            write!(f, "[{}, {}]", self.lower, self.upper)
        }
    }
}
