use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{RadialError, ScalarExt};
use crate::scalar::{format_rational, int, latex_rational, to_f64, Rational};

/// Names of the two radial variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RadialVars {
    /// `(θ, ρ)` with `θ = <x, t>`, `ρ = |y|`.
    ThetaRho,
    /// `(r, ρ)` with `r = |x|`, `ρ = |y|`.
    RRho,
    /// `(x0, R)` with `R = |X|`.
    AxisR,
}

impl RadialVars {
    pub fn names(self) -> (&'static str, &'static str) {
        match self {
            RadialVars::ThetaRho => ("theta", "rho"),
            RadialVars::RRho => ("r", "rho"),
            RadialVars::AxisR => ("x0", "R"),
        }
    }

    pub fn latex_names(self) -> (&'static str, &'static str) {
        match self {
            RadialVars::ThetaRho => ("\\theta", "\\rho"),
            RadialVars::RRho => ("r", "\\rho"),
            RadialVars::AxisR => ("x_0", "R"),
        }
    }
}

/// Which of the two radial variables an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Which {
    First,
    Second,
}

/// Laurent polynomial in two radial variables with coefficients `c·π^s`.
///
/// All terms share one power of π (`pi_pow`); sums across different powers
/// are rejected with [`RadialError::MixedPi`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentBi {
    vars: RadialVars,
    pi_pow: u32,
    terms: BTreeMap<(i32, i32), Rational>,
}

impl LaurentBi {
    pub fn zero(vars: RadialVars) -> Self {
        LaurentBi {
            vars,
            pi_pow: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: RadialVars, c: ScalarExt) -> Self {
        Self::monomial(vars, 0, 0, c)
    }

    pub fn monomial(vars: RadialVars, a: i32, b: i32, c: ScalarExt) -> Self {
        let mut out = Self::zero(vars);
        if !c.is_zero() {
            out.pi_pow = c.pi_pow();
            out.terms.insert((a, b), c.rat().clone());
        }
        out
    }

    /// Builds from rational terms sharing `pi_pow`; duplicate exponents add.
    pub fn from_terms(
        vars: RadialVars,
        pi_pow: u32,
        terms: impl IntoIterator<Item = ((i32, i32), Rational)>,
    ) -> Self {
        let mut out = Self::zero(vars);
        out.pi_pow = pi_pow;
        for (e, c) in terms {
            out.add_rational(e, c);
        }
        out.canonicalize();
        out
    }

    fn add_rational(&mut self, e: (i32, i32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn canonicalize(&mut self) {
        if self.terms.is_empty() {
            self.pi_pow = 0;
        }
    }

    pub fn vars(&self) -> RadialVars {
        self.vars
    }

    /// Common power of π (0 for the zero polynomial).
    pub fn pi_pow(&self) -> u32 {
        self.pi_pow
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic `(a, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), ScalarExt)> + '_ {
        self.terms
            .iter()
            .map(|(e, c)| (*e, ScalarExt::new(c.clone(), self.pi_pow)))
    }

    pub fn rational_terms(&self) -> impl Iterator<Item = (&(i32, i32), &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: i32, b: i32) -> ScalarExt {
        match self.terms.get(&(a, b)) {
            Some(c) => ScalarExt::new(c.clone(), self.pi_pow),
            None => ScalarExt::zero(),
        }
    }

    /// First term in lexicographic order.
    pub fn leading(&self) -> Option<((i32, i32), ScalarExt)> {
        self.terms().next()
    }

    pub fn with_vars(&self, vars: RadialVars) -> Self {
        LaurentBi {
            vars,
            ..self.clone()
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RadialError> {
        if self.vars != other.vars {
            return Err(RadialError::VarMismatch(self.vars, other.vars));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_pow != other.pi_pow {
            return Err(RadialError::MixedPi(self.pi_pow, other.pi_pow));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_rational(*e, c.clone());
        }
        out.canonicalize();
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RadialError> {
        self.checked_add(&other.neg())
    }

    /// Sum of values derived from one source, which share its π power.
    pub(crate) fn add_same_source(&self, other: &Self) -> Self {
        self.checked_add(other)
            .expect("derivatives and shifts keep the π power of their source")
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.vars);
        }
        LaurentBi {
            vars: self.vars,
            pi_pow: self.pi_pow,
            terms: self.terms.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    pub fn scale_ext(&self, factor: &ScalarExt) -> Self {
        if factor.is_zero() || self.is_zero() {
            return Self::zero(self.vars);
        }
        let mut out = self.scale(factor.rat());
        out.pi_pow += factor.pi_pow();
        out
    }

    /// Exact division by a nonzero `c·π^s`; fails if the π power would go
    /// negative.
    pub fn checked_div_ext(&self, divisor: &ScalarExt) -> Result<Self, RadialError> {
        if divisor.is_zero() {
            return Err(RadialError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let pi_pow = self
            .pi_pow
            .checked_sub(divisor.pi_pow())
            .ok_or(RadialError::NegativePiPower)?;
        let inv = divisor.rat().recip();
        let mut out = self.scale(&inv);
        out.pi_pow = pi_pow;
        Ok(out)
    }

    /// Multiplies by `first^da · second^db`.
    pub fn shift(&self, da: i32, db: i32) -> Self {
        LaurentBi {
            vars: self.vars,
            pi_pow: self.pi_pow,
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((a + da, b + db), c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `v^d` for the chosen variable.
    pub fn shift_var(&self, which: Which, d: i32) -> Self {
        match which {
            Which::First => self.shift(d, 0),
            Which::Second => self.shift(0, d),
        }
    }

    pub fn derivative(&self, which: Which) -> Self {
        let mut out = Self::zero(self.vars);
        out.pi_pow = self.pi_pow;
        for (&(a, b), c) in &self.terms {
            let (e, n) = match which {
                Which::First => ((a - 1, b), a),
                Which::Second => ((a, b - 1), b),
            };
            if n != 0 {
                out.terms.insert(e, c * int(i64::from(n)));
            }
        }
        out.canonicalize();
        out
    }

    /// `(v^{-1} ∂_v)^n f`.
    pub fn ladder_i(&self, which: Which, n: u32) -> Self {
        (0..n).fold(self.clone(), |f, _| f.derivative(which).shift_var(which, -1))
    }

    /// `(∂_v v^{-1})^n f`.
    pub fn ladder_ii(&self, which: Which, n: u32) -> Self {
        (0..n).fold(self.clone(), |f, _| f.shift_var(which, -1).derivative(which))
    }

    /// Common total degree `a + b`, if every term shares it.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|(a, b)| a + b);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn eval(&self, first: f64, second: f64) -> f64 {
        let pi = std::f64::consts::PI.powi(self.pi_pow as i32);
        self.terms
            .iter()
            .map(|((a, b), c)| to_f64(c) * first.powi(*a) * second.powi(*b))
            .sum::<f64>()
            * pi
    }

    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let (v1, v2) = self.vars.latex_names();
        let pieces: Vec<(bool, String)> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let mut body = String::new();
                let mag = c.abs();
                let mut vars = String::new();
                for (v, e) in [(v1, *a), (v2, *b)] {
                    match e {
                        0 => {}
                        1 => vars.push_str(v),
                        _ => vars.push_str(&format!("{v}^{{{e}}}")),
                    }
                }
                let pi = match self.pi_pow {
                    0 => String::new(),
                    1 => "\\pi".into(),
                    s => format!("\\pi^{{{s}}}"),
                };
                if !mag.is_one() || (vars.is_empty() && pi.is_empty()) {
                    body.push_str(&latex_rational(&mag));
                }
                body.push_str(&pi);
                body.push_str(&vars);
                (c.is_negative(), body)
            })
            .collect();
        crate::polyalg::join_signed(&pieces)
    }
}

impl fmt::Debug for LaurentBi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentBi[{:?}]({self})", self.vars)
    }
}

/// Terms like `-8/3*r^-2*rho^4*pi`.
impl fmt::Display for LaurentBi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let (v1, v2) = self.vars.names();
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            for (v, e) in [(v1, *a), (v2, *b)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            match self.pi_pow {
                0 => {}
                1 => factors.push("pi".into()),
                s => factors.push(format!("pi^{s}")),
            }
            if !mag.is_one() || factors.is_empty() {
                factors.insert(0, format_rational(&mag));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn lp(terms: &[((i32, i32), Rational)]) -> LaurentBi {
        LaurentBi::from_terms(RadialVars::ThetaRho, 0, terms.iter().cloned())
    }

    #[test]
    fn derivative_examples() {
        let rho2 = lp(&[((0, 2), int(1))]);
        assert_eq!(rho2.derivative(Which::Second), lp(&[((0, 1), int(2))]));
        let inv = lp(&[((0, -1), int(1))]);
        assert_eq!(inv.derivative(Which::Second), lp(&[((0, -2), int(-1))]));
        let rho3 = lp(&[((0, 3), int(1))]);
        assert!(rho3.derivative(Which::First).is_zero());
    }

    #[test]
    fn ladder_examples() {
        let f = lp(&[((2, 0), int(1)), ((0, 2), int(-1))]);
        assert_eq!(f.ladder_i(Which::Second, 1), lp(&[((0, 0), int(-2))]));
        let g = lp(&[((1, 1), int(2))]);
        assert!(g.ladder_ii(Which::Second, 1).is_zero());
        assert_eq!(f.ladder_i(Which::Second, 0), f);
    }

    #[test]
    fn mixed_pi_is_rejected() {
        let a = LaurentBi::constant(RadialVars::RRho, ScalarExt::new(int(1), 1));
        let b = LaurentBi::constant(RadialVars::RRho, ScalarExt::new(int(1), 0));
        assert_eq!(a.checked_add(&b), Err(RadialError::MixedPi(1, 0)));
        let z = LaurentBi::zero(RadialVars::RRho);
        assert_eq!(a.checked_add(&z).unwrap(), a);
        let c = LaurentBi::zero(RadialVars::AxisR);
        assert!(matches!(a.checked_add(&c), Err(RadialError::VarMismatch(..))));
    }

    #[test]
    fn display_forms() {
        let f = LaurentBi::from_terms(
            RadialVars::RRho,
            0,
            [((-2, 4), rat(-8, 3)), ((1, 0), int(1)), ((0, 0), int(2))],
        );
        assert_eq!(f.to_string(), "-8/3*r^-2*rho^4 + 2 + r");
        let g = LaurentBi::monomial(RadialVars::RRho, 0, 1, ScalarExt::new(int(3), 1));
        assert_eq!(g.to_string(), "3*rho*pi");
        assert_eq!(LaurentBi::zero(RadialVars::RRho).to_string(), "0");
        assert_eq!(f.to_latex(), "-\\frac{8}{3}r^{-2}\\rho^{4} + 2 + r");
    }

    #[test]
    fn division_by_pi_scalar() {
        let g = LaurentBi::monomial(RadialVars::RRho, 0, 1, ScalarExt::new(int(3), 1));
        let d = g.checked_div_ext(&ScalarExt::new(int(3), 1)).unwrap();
        assert_eq!(d, LaurentBi::monomial(RadialVars::RRho, 0, 1, ScalarExt::one()));
        assert_eq!(d.checked_div_ext(&ScalarExt::new(int(1), 1)), Err(RadialError::NegativePiPower));
    }

    #[test]
    fn eval_includes_pi() {
        let g = LaurentBi::monomial(RadialVars::RRho, 1, -1, ScalarExt::new(rat(1, 2), 1));
        let v = g.eval(2.0, 4.0);
        assert!((v - std::f64::consts::PI / 4.0).abs() < 1e-15);
    }
}
