use std::fmt;

use num_traits::{One, Signed, Zero};

use super::RadialError;
use crate::scalar::{format_rational, to_f64, Rational};

/// Exact value `rat · π^pi_pow`. Canonical: zero always has `pi_pow = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScalarExt {
    rat: Rational,
    pi_pow: u32,
}

impl ScalarExt {
    pub fn new(rat: Rational, pi_pow: u32) -> Self {
        let pi_pow = if rat.is_zero() { 0 } else { pi_pow };
        ScalarExt { rat, pi_pow }
    }

    pub fn rational(rat: Rational) -> Self {
        Self::new(rat, 0)
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn pi_pow(&self) -> u32 {
        self.pi_pow
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RadialError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_pow != other.pi_pow {
            return Err(RadialError::MixedPi(self.pi_pow, other.pi_pow));
        }
        Ok(Self::new(&self.rat + &other.rat, self.pi_pow))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.rat * &other.rat, self.pi_pow + other.pi_pow)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(&self.rat * q, self.pi_pow)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, RadialError> {
        if other.is_zero() {
            return Err(RadialError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let pi_pow = self
            .pi_pow
            .checked_sub(other.pi_pow)
            .ok_or(RadialError::NegativePiPower)?;
        Ok(Self::new(&self.rat / &other.rat, pi_pow))
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.rat.clone(), self.pi_pow)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.rat) * std::f64::consts::PI.powi(self.pi_pow as i32)
    }
}

/// `3/5`, `pi`, `-2*pi^2`.
impl fmt::Display for ScalarExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pi = match self.pi_pow {
            0 => return write!(f, "{}", format_rational(&self.rat)),
            1 => "pi".to_string(),
            s => format!("pi^{s}"),
        };
        if self.rat.is_one() {
            write!(f, "{pi}")
        } else if (-self.rat.clone()).is_one() {
            write!(f, "-{pi}")
        } else {
            let sign = if self.rat.is_negative() { "-" } else { "" };
            write!(f, "{sign}{}*{pi}", format_rational(&self.rat.abs()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn canonical_zero() {
        assert_eq!(ScalarExt::new(int(0), 3), ScalarExt::zero());
        assert_eq!(ScalarExt::new(int(0), 3).pi_pow(), 0);
    }

    #[test]
    fn arithmetic() {
        let a = ScalarExt::new(rat(1, 8), 1);
        let b = ScalarExt::new(rat(3, 8), 1);
        assert_eq!(a.checked_add(&b).unwrap(), ScalarExt::new(rat(1, 2), 1));
        assert_eq!(a.checked_add(&ScalarExt::one()), Err(RadialError::MixedPi(1, 0)));
        assert_eq!(a.mul(&b), ScalarExt::new(rat(3, 64), 2));
        assert_eq!(b.checked_div(&a).unwrap(), ScalarExt::rational(int(3)));
        assert_eq!(ScalarExt::one().checked_div(&a), Err(RadialError::NegativePiPower));
        assert_eq!(a.checked_div(&ScalarExt::zero()), Err(RadialError::DivisionByZero));
    }

    #[test]
    fn display() {
        assert_eq!(ScalarExt::new(rat(-8, 3), 0).to_string(), "-8/3");
        assert_eq!(ScalarExt::new(int(1), 1).to_string(), "pi");
        assert_eq!(ScalarExt::new(int(-1), 2).to_string(), "-pi^2");
        assert_eq!(ScalarExt::new(rat(-1, 8), 1).to_string(), "-1/8*pi");
    }
}
