//! Gegenbauer polynomials, exact weighted moments and sphere areas.
//!
//! The weight throughout is `(1 − t²)^{(p−3)/2}` on `[−1, 1]`, i.e.
//! Gegenbauer parameter `λ = (p − 2)/2`.

mod oracle;
mod quadrature;

pub use oracle::{funk_hecke_oracle, FunkHeckeComparison};
pub use quadrature::{gauss_jacobi_rule, QuadratureRule};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::radial::ScalarExt;
use crate::scalar::{factorial, int, rat, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GegenbauerError {
    #[error("Gegenbauer parameter must be positive, got {0}")]
    NonPositiveLambda(String),
    #[error("dimension p = {0} is below 3")]
    DimensionTooSmall(usize),
    #[error("surface area needs d >= 1")]
    InvalidSphere,
    #[error("quadrature order must be at least 1")]
    InvalidOrder,
    #[error("quadrature construction failed for order {order}, p = {p}: {reason}")]
    QuadratureFailure { order: usize, p: usize, reason: String },
    #[error("xi is not a unit vector (|xi| = {0})")]
    NonUnitVector(f64),
    #[error("oracle input: {0}")]
    OracleInput(String),
}

/// `C_k^λ(t)` with exact coefficients; `coeffs[i]` multiplies `t^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GegenbauerPoly {
    k: u32,
    lambda: Rational,
    coeffs: Vec<Rational>,
}

impl GegenbauerPoly {
    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + to_f64(c))
    }

    /// `C_k(1)`, by evaluating the polynomial.
    pub fn at_one(&self) -> Rational {
        self.eval(&Rational::one())
    }
}

/// Three-term recurrence `C_k = (2(k+λ−1) t C_{k−1} − (k+2λ−2) C_{k−2}) / k`.
pub fn gegenbauer(k: u32, lambda: &Rational) -> Result<GegenbauerPoly, GegenbauerError> {
    if !lambda.is_positive() {
        return Err(GegenbauerError::NonPositiveLambda(crate::scalar::format_rational(lambda)));
    }
    let mut prev: Vec<Rational> = Vec::new();
    let mut cur = vec![Rational::one()];
    for j in 1..=k {
        let jr = int(i64::from(j));
        let a = (jr.clone() + lambda - int(1)) * int(2) / &jr;
        let b = (jr.clone() + lambda * int(2) - int(2)) / &jr;
        let mut next = vec![Rational::zero(); j as usize + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * &a;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * &b;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(GegenbauerPoly {
        k,
        lambda: lambda.clone(),
        coeffs: cur,
    })
}

/// `C_k^{(p−2)/2}`.
pub fn gegenbauer_for_dim(k: u32, p: usize) -> Result<GegenbauerPoly, GegenbauerError> {
    if p < 3 {
        return Err(GegenbauerError::DimensionTooSmall(p));
    }
    gegenbauer(k, &rat(p as i64 - 2, 2))
}

/// `Γ(n/2)` as `(c, s)` with value `c · √π^s`, `s ∈ {0, 1}`.
fn half_gamma(n: u32) -> (Rational, u32) {
    debug_assert!(n >= 1);
    if n.is_multiple_of(2) {
        (Rational::from_integer(factorial(n / 2 - 1)), 0)
    } else {
        // Γ(1/2) = √π, Γ(x + 1) = x Γ(x)
        let mut c = Rational::one();
        let mut x = rat(1, 2);
        while x < rat(i64::from(n), 2) {
            c *= &x;
            x += Rational::one();
        }
        (c, 1)
    }
}

/// `∫_{−1}^{1} t^j (1 − t²)^{(p−3)/2} dt = B((j+1)/2, (p−1)/2)` for even `j`.
pub fn monomial_moment(j: u32, p: usize) -> Result<ScalarExt, GegenbauerError> {
    if p < 3 {
        return Err(GegenbauerError::DimensionTooSmall(p));
    }
    if j % 2 == 1 {
        return Ok(ScalarExt::zero());
    }
    let a = j + 1;
    let b = p as u32 - 1;
    let (ga, sa) = half_gamma(a);
    let (gb, sb) = half_gamma(b);
    let (gab, sab) = half_gamma(a + b);
    // √π powers: sa + sb − sab is 0 or 2
    let s = sa + sb - sab;
    debug_assert!(s % 2 == 0);
    Ok(ScalarExt::new(ga * gb / gab, s / 2))
}

/// `∫ t^n C_k(t) (1 − t²)^{(p−3)/2} dt`.
pub fn moment(n: u32, k: u32, p: usize) -> Result<ScalarExt, GegenbauerError> {
    let c = gegenbauer_for_dim(k, p)?;
    weighted_integral(c.coeffs(), n, p)
}

/// `∫ t^shift · Σ coeffs[i] t^i · (1 − t²)^{(p−3)/2} dt`.
pub fn weighted_integral(coeffs: &[Rational], shift: u32, p: usize) -> Result<ScalarExt, GegenbauerError> {
    let mut total = Rational::zero();
    let mut pi_pow = 0;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let m = monomial_moment(shift + i as u32, p)?;
        if m.is_zero() {
            continue;
        }
        // every nonzero moment for fixed p carries the same π power
        pi_pow = m.pi_pow();
        total += c * m.rat();
    }
    Ok(ScalarExt::new(total, pi_pow))
}

/// `|S^{d−1}| = 2π^{d/2} / Γ(d/2)`.
pub fn surface_area(d: u32) -> Result<ScalarExt, GegenbauerError> {
    if d == 0 {
        return Err(GegenbauerError::InvalidSphere);
    }
    let (g, s) = half_gamma(d);
    // numerator 2·√π^d; Γ supplies √π^s with s ≡ d (mod 2)
    Ok(ScalarExt::new(int(2) / g, (d - s) / 2))
}
