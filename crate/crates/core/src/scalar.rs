//! Scalar types shared by the exact and the floating-point paths.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational used by every exact computation.
pub type Rational = BigRational;

/// Coefficient field for [`crate::clifford::Multivector`].
///
/// Implemented for [`Rational`] (exact path) and `f64` (numeric path). The two
/// are never mixed inside one value.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator/denominator overflow f64 individually; divide after scaling
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// `a/b`, or `a` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a`, `-a`, `a/b`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// LaTeX for a rational magnitude: `\frac{a}{b}` or `a`.
pub fn latex_rational(q: &Rational) -> String {
    let q = q.abs();
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
