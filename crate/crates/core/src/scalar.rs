//! Scalar backends shared by the polynomial and operator layers.
//!
//! Two backends implement [`Scalar`]: exact rationals ([`Rational`]) for the
//! crystallographic groups and custom rational root data, and `f64` for
//! dihedral groups whose roots involve irrational cosines.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{DunklError, Result};

pub type Rational = BigRational;

/// Tolerance used by the float backend for identities that are exact in the
/// rational backend.
pub const FLOAT_IDENTITY_TOL: f64 = 1e-9;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn abs_val(&self) -> Self;

    /// The value of a finite double (exact for rationals).
    fn from_f64(x: f64) -> Self;

    /// Whether `self` vanishes relative to `scale`: exactly for rationals,
    /// within [`FLOAT_IDENTITY_TOL`] (relative) for floats.
    fn negligible(&self, scale: f64) -> bool;

    /// Hashable key for set membership of group elements and roots.
    fn key(&self) -> ScalarKey;

    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    fn approx_eq(&self, other: &Self, scale: f64) -> bool {
        (self.clone() - other.clone()).negligible(scale)
    }

    fn pow_u(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarKey {
    Exact(Rational),
    /// Float rounded onto a 1e-9 grid.
    Rounded(i64),
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).expect("finite double")
    }

    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn key(&self) -> ScalarKey {
        ScalarKey::Exact(self.clone())
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_IDENTITY_TOL * scale.max(1.0)
    }

    fn key(&self) -> ScalarKey {
        let v = (self * 1e9).round();
        // -0 and 0 share a key
        ScalarKey::Rounded(if v == 0.0 { 0 } else { v as i64 })
    }
}

/// Converts a big rational to the nearest representable double, including
/// numerators and denominators beyond the f64 range.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(q) {
        if v.is_finite() {
            return v;
        }
    }
    let n = q.numer();
    let d = q.denom();
    let shift = n.bits() as i64 - d.bits() as i64;
    // scale to a ratio near 1 before converting
    let (n2, d2) = if shift > 0 {
        (n.clone(), d.clone() << (shift as usize))
    } else {
        (n.clone() << ((-shift) as usize), d.clone())
    };
    let r = ToPrimitive::to_f64(&Rational::new(n2, d2)).unwrap_or(f64::NAN);
    r * 2f64.powi(shift as i32)
}

/// Parses "p/q", "p", or a finite decimal such as "0.25" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(DunklError::Parse("empty rational literal".into()));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim())
            .map_err(|_| DunklError::Parse(format!("bad numerator in '{t}'")))?;
        let q = BigInt::from_str(q.trim())
            .map_err(|_| DunklError::Parse(format!("bad denominator in '{t}'")))?;
        if q.is_zero() {
            return Err(DunklError::Parse(format!("zero denominator in '{t}'")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let neg = int_part.trim_start().starts_with('-');
        let digits: String = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(DunklError::Parse(format!("bad decimal '{t}'")));
        }
        let num = BigInt::from_str(&digits).unwrap();
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        let q = Rational::new(num, den);
        return Ok(if neg { -q } else { q });
    }
    BigInt::from_str(t)
        .map(Rational::from_integer)
        .map_err(|_| DunklError::Parse(format!("bad rational '{t}'")))
}

/// Formats a rational as "p/q" (or "p" for integers).
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact rational with the same value as a finite double.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-4").unwrap(), rat_int(-4));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn huge_rationals_convert() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let q = Rational::new(big.clone() * BigInt::from(3), big);
        assert!((rational_to_f64(&q) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn float_keys_merge_noise() {
        assert_eq!(1.0f64.key(), (1.0 + 1e-13).key());
        assert_eq!(0.0f64.key(), (-1e-14f64).key());
    }
}
