//! Exact rationals over `i64` and rational multiples of pi.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = n.checked_neg().ok_or(Error::Overflow("rational sign"))?;
            d = d.checked_neg().ok_or(Error::Overflow("rational sign"))?;
        }
        Ok(Self { num: n, den: d })
    }

    pub const fn integer(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_positive(self) -> bool {
        self.num > 0
    }

    pub fn abs(self) -> Result<Self> {
        Ok(Self { num: self.num.checked_abs().ok_or(Error::Overflow("rational abs"))?, den: self.den })
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let l = self.den.lcm(&rhs.den);
        let a = self.num.checked_mul(l / self.den).ok_or(Error::Overflow("rational add"))?;
        let b = rhs.num.checked_mul(l / rhs.den).ok_or(Error::Overflow("rational add"))?;
        Self::new(a.checked_add(b).ok_or(Error::Overflow("rational add"))?, l)
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(Self { num: self.num.checked_neg().ok_or(Error::Overflow("rational neg"))?, den: self.den })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.checked_add(rhs.checked_neg()?)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        // Cross-reduce first to keep intermediates small.
        let g1 = self.num.gcd(&rhs.den).max(1);
        let g2 = rhs.num.gcd(&self.den).max(1);
        let n = (self.num / g1).checked_mul(rhs.num / g2).ok_or(Error::Overflow("rational mul"))?;
        let d = (self.den / g2).checked_mul(rhs.den / g1).ok_or(Error::Overflow("rational mul"))?;
        Self::new(n, d)
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.num == 0 {
            return Err(Error::ZeroDenominator);
        }
        self.checked_mul(Self::new(rhs.den, rhs.num)?)
    }

    pub fn checked_mul_int(self, k: i64) -> Result<Self> {
        self.checked_mul(Self::integer(k))
    }

    /// Least positive common multiple of two positive rationals:
    /// `lcm(a/b, c/d) = lcm(a, c) / gcd(b, d)`.
    pub fn lcm(self, rhs: Self) -> Result<Self> {
        if self.num <= 0 || rhs.num <= 0 {
            return Err(Error::Precondition("rational lcm needs positive arguments".into()));
        }
        let g = self.num.gcd(&rhs.num);
        let n = (self.num / g).checked_mul(rhs.num).ok_or(Error::Overflow("rational lcm"))?;
        Self::new(n, self.den.gcd(&rhs.den))
    }

    /// Floor of the fraction.
    pub fn floor(self) -> i64 {
        Integer::div_floor(&self.num, &self.den)
    }

    /// Remainder in `[0, m)` for positive `m`.
    pub fn rem_euclid(self, m: Self) -> Result<Self> {
        if !m.is_positive() {
            return Err(Error::Precondition("modulus must be positive".into()));
        }
        let q = self.checked_div(m)?.floor();
        self.checked_sub(m.checked_mul_int(q)?)
    }
}

impl TryFrom<(i64, i64)> for Rational {
    type Error = Error;
    fn try_from((n, d): (i64, i64)) -> Result<Self> {
        Self::new(n, d)
    }
}

impl From<Rational> for (i64, i64) {
    fn from(r: Rational) -> Self {
        (r.num, r.den)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Denominators are positive, so cross-multiplication in i128 is exact.
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// An exact angle `(num/den)·pi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalAngle(Rational);

impl RationalAngle {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        Ok(Self(Rational::new(num, den)?))
    }

    pub fn from_pi_multiple(r: Rational) -> Self {
        Self(r)
    }

    /// The angle `2·pi·r`.
    pub fn turns(r: Rational) -> Result<Self> {
        Ok(Self(r.checked_mul_int(2)?))
    }

    pub fn pi_multiple(self) -> Rational {
        self.0
    }

    pub fn radians(self) -> f64 {
        PI * self.0.num as f64 / self.0.den as f64
    }

    pub fn is_multiple_of_pi(self) -> bool {
        self.0.is_integer()
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        Ok(Self(self.0.checked_add(rhs.0)?))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        Ok(Self(self.0.checked_sub(rhs.0)?))
    }

    /// Adds `i·pi`.
    pub fn add_half_turns(self, i: i64) -> Result<Self> {
        Ok(Self(self.0.checked_add(Rational::integer(i))?))
    }

    /// Reduces into `[0, 2k·pi)`.
    pub fn rem_full_turns(self, k: u32) -> Result<Self> {
        Ok(Self(self.0.rem_euclid(Rational::integer(2 * k as i64))?))
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})pi", self.0)
    }
}
