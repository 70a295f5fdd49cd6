//! Holomorphic seeds `h(z)`: exact polynomials and numeric callables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::TransformError;
use crate::radial::{LaurentBi, RadialVars};
use crate::scalar::{binomial, format_rational, to_f64, Rational};
use crate::text::Cursor;

/// `re + i·im` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn imag(im: Rational) -> Self {
        Self::new(Rational::zero(), im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

/// `h(z) = Σ c_n z^n` with Gaussian-rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactSeed {
    coeffs: BTreeMap<u32, GaussianRational>,
}

impl ExactSeed {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · z^n`.
    pub fn monomial(n: u32, c: GaussianRational) -> Self {
        let mut s = Self::zero();
        s.add_term(n, c);
        s
    }

    /// `z^n`.
    pub fn power(n: u32) -> Self {
        Self::monomial(n, GaussianRational::real(Rational::one()))
    }

    pub fn add_term(&mut self, n: u32, c: GaussianRational) {
        let slot = self
            .coeffs
            .entry(n)
            .or_insert_with(|| GaussianRational::real(Rational::zero()));
        slot.re += c.re;
        slot.im += c.im;
        if slot.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn coefficient(&self, n: u32) -> GaussianRational {
        self.coeffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| GaussianRational::real(Rational::zero()))
    }

    /// Nonzero coefficients in ascending power.
    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &GaussianRational)> + '_ {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, a: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (n, c) in &self.coeffs {
            out.add_term(
                *n,
                GaussianRational::new(
                    &c.re * &a.re - &c.im * &a.im,
                    &c.re * &a.im + &c.im * &a.re,
                ),
            );
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in &other.coeffs {
            out.add_term(*n, c.clone());
        }
        out
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let top = match self.degree() {
            Some(d) => d,
            None => return Complex64::zero(),
        };
        (0..=top)
            .rev()
            .fold(Complex64::zero(), |acc, n| acc * z + self.coefficient(n).to_complex())
    }

    /// The same function as a numeric seed, valid everywhere.
    pub fn to_numeric(&self) -> NumericSeed {
        let me = self.clone();
        NumericSeed::new(self.to_string(), move |z| me.eval(z), |_, _| true)
    }
}

/// Descending powers; a coefficient with both parts prints as two terms,
/// e.g. `z^2 + 2*i*z^2`.
impl fmt::Display for ExactSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<(bool, String)> = Vec::new();
        for (n, c) in self.coeffs.iter().rev() {
            let z = match n {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{n}"),
            };
            for (part, imag) in [(&c.re, false), (&c.im, true)] {
                if part.is_zero() {
                    continue;
                }
                let mag = part.abs();
                let mut factors = Vec::new();
                if !mag.is_one() || (!imag && z.is_empty()) {
                    factors.push(format_rational(&mag));
                }
                if imag {
                    factors.push("i".to_string());
                }
                if !z.is_empty() {
                    factors.push(z.clone());
                }
                pieces.push((part.is_negative(), factors.join("*")));
            }
        }
        if pieces.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", crate::polyalg::join_signed(&pieces))
    }
}

type ComplexFn = dyn Fn(Complex64) -> Complex64 + Send + Sync;
type Validity = dyn Fn(f64, f64) -> bool + Send + Sync;

/// Numeric `h`, with a predicate on `(θ, ρ)` telling where `h(θ + iρ)` may
/// be evaluated.
#[derive(Clone)]
pub struct NumericSeed {
    label: String,
    f: Arc<ComplexFn>,
    valid: Arc<Validity>,
}

impl NumericSeed {
    pub fn new(
        label: impl Into<String>,
        f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        valid: impl Fn(f64, f64) -> bool + Send + Sync + 'static,
    ) -> Self {
        NumericSeed {
            label: label.into(),
            f: Arc::new(f),
            valid: Arc::new(valid),
        }
    }

    /// `1/(1+z²)` on `ρ > 1`, i.e. above the pole at `i`.
    pub fn inverse_one_plus_z2() -> Self {
        Self::new(
            "1/(1+z^2)",
            |z| (Complex64::one() + z * z).inv(),
            |_, rho| rho > 1.0,
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.f)(z)
    }

    pub fn is_valid(&self, theta: f64, rho: f64) -> bool {
        (self.valid)(theta, rho)
    }
}

impl fmt::Debug for NumericSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumericSeed({})", self.label)
    }
}

#[derive(Debug, Clone)]
pub enum HolomorphicInput {
    Exact(ExactSeed),
    Numeric(NumericSeed),
}

impl HolomorphicInput {
    pub fn exact(&self) -> Result<&ExactSeed, TransformError> {
        match self {
            HolomorphicInput::Exact(s) => Ok(s),
            HolomorphicInput::Numeric(s) => Err(TransformError::ExactSeedRequired(s.label.clone())),
        }
    }
}

impl From<ExactSeed> for HolomorphicInput {
    fn from(s: ExactSeed) -> Self {
        HolomorphicInput::Exact(s)
    }
}

impl From<NumericSeed> for HolomorphicInput {
    fn from(s: NumericSeed) -> Self {
        HolomorphicInput::Numeric(s)
    }
}

/// `u + iv = h(θ + iρ)` by binomial expansion, in `(θ, ρ)`.
pub fn extract_uv(h: &ExactSeed) -> (LaurentBi, LaurentBi) {
    let mut u = Vec::new();
    let mut v = Vec::new();
    for (n, c) in h.coeffs() {
        for j in 0..=n {
            let b = Rational::from_integer(binomial(n, j));
            // i^j
            let (s_re, s_im): (i64, i64) = match j % 4 {
                0 => (1, 0),
                1 => (0, 1),
                2 => (-1, 0),
                _ => (0, -1),
            };
            let re = &c.re * Rational::from_integer(BigInt::from(s_re))
                - &c.im * Rational::from_integer(BigInt::from(s_im));
            let im = &c.re * Rational::from_integer(BigInt::from(s_im))
                + &c.im * Rational::from_integer(BigInt::from(s_re));
            let e = ((n - j) as i32, j as i32);
            u.push((e, &b * re));
            v.push((e, &b * im));
        }
    }
    (
        LaurentBi::from_terms(RadialVars::ThetaRho, 0, u),
        LaurentBi::from_terms(RadialVars::ThetaRho, 0, v),
    )
}

/// Grammar `term (('+'|'-') term)*` with `term = [coef '*'] 'z' ['^' int] | coef`
/// and `coef = rational | rational '*' 'i' | 'i'`; whitespace is ignored.
pub fn parse_holomorphic(text: &str) -> Result<ExactSeed, TransformError> {
    let mut cur = Cursor::new(text);
    let syntax = |pos: usize, msg: &str| TransformError::Syntax {
        pos,
        msg: msg.to_string(),
    };
    if cur.at_end() {
        return Err(syntax(cur.pos(), "empty expression"));
    }
    let mut seed = ExactSeed::zero();
    let mut first = true;
    while !cur.at_end() {
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            return Err(syntax(cur.pos(), "expected '+' or '-'"));
        };
        first = false;
        let (n, mut c) = parse_term(&mut cur)?;
        if negative {
            c = GaussianRational::new(-c.re, -c.im);
        }
        seed.add_term(n, c);
    }
    Ok(seed)
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<(u32, GaussianRational), TransformError> {
    let syntax = |pos: usize, msg: &str| TransformError::Syntax {
        pos,
        msg: msg.to_string(),
    };
    let one = Rational::one();
    let coef = match cur.peek() {
        Some('z') => None,
        Some('i') => {
            cur.bump();
            Some(GaussianRational::imag(one.clone()))
        }
        Some(c) if c.is_ascii_digit() => {
            let q = cur
                .rational()
                .expect("digit present")
                .map_err(|pos| syntax(pos, "bad denominator"))?;
            let save = cur.pos();
            if cur.peek() == Some('*') {
                cur.bump();
                if cur.eat('i') {
                    Some(GaussianRational::imag(q))
                } else if cur.peek() == Some('z') {
                    return finish_power(cur, GaussianRational::real(q));
                } else {
                    return Err(syntax(save + 1, "expected 'i' or 'z' after '*'"));
                }
            } else {
                Some(GaussianRational::real(q))
            }
        }
        _ => return Err(syntax(cur.pos(), "expected a coefficient or 'z'")),
    };
    match coef {
        None => finish_power(cur, GaussianRational::real(one)),
        Some(c) => {
            if cur.eat('*') {
                if cur.peek() != Some('z') {
                    return Err(syntax(cur.pos(), "expected 'z'"));
                }
                finish_power(cur, c)
            } else {
                Ok((0, c))
            }
        }
    }
}

fn finish_power(cur: &mut Cursor<'_>, c: GaussianRational) -> Result<(u32, GaussianRational), TransformError> {
    let z = cur.eat('z');
    debug_assert!(z);
    if !cur.eat('^') {
        return Ok((1, c));
    }
    let pos = cur.pos();
    if cur.peek() == Some('-') {
        return Err(TransformError::Syntax {
            pos,
            msg: "negative exponent".into(),
        });
    }
    let digits = cur.digits().ok_or_else(|| TransformError::Syntax {
        pos,
        msg: "expected an exponent".into(),
    })?;
    let n: u32 = digits.parse().map_err(|_| TransformError::Syntax {
        pos,
        msg: "exponent too large".into(),
    })?;
    Ok((n, c))
}
