//! Polynomials in Cartesian coordinates with Clifford-valued coefficients,
//! and the differential operators acting on them.
//!
//! Variables are laid out as `[x0] x1..xp y1..yq`. The x-block variable
//! `x_j` pairs with generator `e_j`, the y-block variable `y_j` with
//! `e_{p+j}`; the optional scalar axis `x0` pairs with the identity.

mod monogenic;
mod text;

pub use monogenic::{builtin_monogenic, validate_spherical_monogenic, SphericalMonogenic};
pub use text::{parse_poly, PolyTermJson};
pub(crate) use text::join_signed;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::clifford::{CliffordError, Multivector};
use crate::scalar::{int, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("unknown variable `{var}` for layout {layout}")]
    UnknownVariable { var: String, layout: Layout },
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("not homogeneous of degree {degree}: witness term `{witness}`")]
    NotHomogeneous { degree: u32, witness: String },
    #[error("not monogenic: Dirac image contains `{witness}`")]
    NotMonogenic { witness: String },
    #[error("coefficient not even over the block generators: `{witness}`")]
    NotEven { witness: String },
    #[error("term `{witness}` uses variables outside the {block:?} block")]
    ForeignVariable { block: Block, witness: String },
    #[error("block dimension {dim} too small for degree {degree} (needs at least 2)")]
    DimensionTooSmall { dim: usize, degree: u32 },
    #[error("layout mismatch: {0} vs {1}")]
    LayoutMismatch(Layout, Layout),
}

/// Variable block selector for the operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    X,
    Y,
    /// x-block plus y-block plus, in axial layouts, the `x0` axis.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Scalar axis `x0` (axial layouts only).
    Axis,
    X(usize),
    Y(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Axis => write!(f, "x0"),
            Var::X(j) => write!(f, "x{j}"),
            Var::Y(j) => write!(f, "y{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Layout {
    pub axis: bool,
    pub p: usize,
    pub q: usize,
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={}{})", self.p, self.q, if self.axis { ", axial" } else { "" })
    }
}

impl Layout {
    pub fn biaxial(p: usize, q: usize) -> Self {
        Layout { axis: false, p, q }
    }

    /// Single vector block of dimension `m` (stored as the y-block) plus the
    /// scalar axis.
    pub fn axial(m: usize) -> Self {
        Layout { axis: true, p: 0, q: m }
    }

    /// Algebra dimension.
    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    pub fn nvars(&self) -> usize {
        usize::from(self.axis) + self.p + self.q
    }

    pub fn index(&self, var: Var) -> Option<usize> {
        let off = usize::from(self.axis);
        match var {
            Var::Axis if self.axis => Some(0),
            Var::X(j) if (1..=self.p).contains(&j) => Some(off + j - 1),
            Var::Y(j) if (1..=self.q).contains(&j) => Some(off + self.p + j - 1),
            _ => None,
        }
    }

    pub fn var_at(&self, i: usize) -> Var {
        let off = usize::from(self.axis);
        if self.axis && i == 0 {
            Var::Axis
        } else if i < off + self.p {
            Var::X(i + 1 - off)
        } else {
            Var::Y(i + 1 - off - self.p)
        }
    }

    /// Generator paired with `var`; `None` for the scalar axis.
    pub fn generator(&self, var: Var) -> Option<usize> {
        match var {
            Var::Axis => None,
            Var::X(j) => Some(j),
            Var::Y(j) => Some(self.p + j),
        }
    }

    pub fn block_vars(&self, block: Block) -> Vec<Var> {
        let xs = (1..=self.p).map(Var::X);
        let ys = (1..=self.q).map(Var::Y);
        match block {
            Block::X => xs.collect(),
            Block::Y => ys.collect(),
            Block::Full => {
                let axis = self.axis.then_some(Var::Axis);
                axis.into_iter().chain(xs).chain(ys).collect()
            }
        }
    }
}

/// Exponent vector. Ordered by descending total degree, then descending
/// lexicographic exponents, so `x1^2` precedes `x1*x2` precedes `x2^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

#[derive(Clone, PartialEq)]
pub struct CartesianPoly {
    layout: Layout,
    terms: BTreeMap<Monomial, Multivector>,
}

impl CartesianPoly {
    pub fn zero(layout: Layout) -> Self {
        CartesianPoly {
            layout,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(layout: Layout, coeff: Multivector) -> Self {
        Self::monomial(layout, vec![0; layout.nvars()], coeff)
    }

    pub fn scalar(layout: Layout, value: Rational) -> Self {
        Self::constant(layout, Multivector::scalar(layout.dim(), value))
    }

    pub fn one(layout: Layout) -> Self {
        Self::scalar(layout, Rational::one())
    }

    pub fn monomial(layout: Layout, exps: Vec<u32>, coeff: Multivector) -> Self {
        assert_eq!(exps.len(), layout.nvars(), "exponent vector length");
        assert_eq!(coeff.dim(), layout.dim(), "coefficient dimension");
        let mut p = Self::zero(layout);
        p.add_term(Monomial(exps), coeff);
        p
    }

    pub fn variable(layout: Layout, var: Var) -> Result<Self, PolyError> {
        let i = layout.index(var).ok_or_else(|| PolyError::UnknownVariable {
            var: var.to_string(),
            layout,
        })?;
        let mut exps = vec![0; layout.nvars()];
        exps[i] = 1;
        Ok(Self::monomial(layout, exps, Multivector::one(layout.dim())))
    }

    /// The vector variable `Σ v_j e_j` of a block (`x` or `y`).
    pub fn vector(layout: Layout, block: Block) -> Self {
        let mut out = Self::zero(layout);
        for var in layout.block_vars(block) {
            let Some(g) = layout.generator(var) else { continue };
            let mut exps = vec![0; layout.nvars()];
            exps[layout.index(var).expect("block var")] = 1;
            out.add_term(Monomial(exps), Multivector::generator(layout.dim(), g));
        }
        out
    }

    /// `Σ v_j^2` over a block.
    pub fn norm_squared(layout: Layout, block: Block) -> Self {
        let mut out = Self::zero(layout);
        for var in layout.block_vars(block) {
            let mut exps = vec![0; layout.nvars()];
            exps[layout.index(var).expect("block var")] = 2;
            out.add_term(Monomial(exps), Multivector::one(layout.dim()));
        }
        out
    }

    pub fn layout(&self) -> Layout {
        self.layout
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Multivector)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Multivector {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| Multivector::zero(self.layout.dim()))
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: Multivector) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(c) => {
                let sum = &*c + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(mono, coeff);
            }
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero(self.layout);
        if factor.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.scale(factor));
        }
        out
    }

    /// `a * self` with `a` a constant multivector.
    pub fn left_mul(&self, a: &Multivector) -> Self {
        let mut out = Self::zero(self.layout);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.layout), |acc, _| &acc * self)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.layout != other.layout {
            return Err(PolyError::LayoutMismatch(self.layout, other.layout));
        }
        Ok(self * other)
    }

    pub fn partial_derivative(&self, var: Var) -> Result<Self, PolyError> {
        let i = self.layout.index(var).ok_or_else(|| PolyError::UnknownVariable {
            var: var.to_string(),
            layout: self.layout,
        })?;
        Ok(self.derive_index(i))
    }

    fn derive_index(&self, i: usize) -> Self {
        let mut out = Self::zero(self.layout);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c.scale(&int(i64::from(e))));
        }
        out
    }

    /// `Σ_j e_j ∂_{v_j} self` over the block, generators acting from the left.
    /// `Full` adds `∂_{x0}` with identity coefficient in axial layouts.
    pub fn dirac(&self, block: Block) -> Self {
        let mut out = Self::zero(self.layout);
        for var in self.layout.block_vars(block) {
            let d = self.derive_index(self.layout.index(var).expect("block var"));
            let term = match self.layout.generator(var) {
                Some(g) => d.left_mul_generator(g),
                None => d,
            };
            out = &out + &term;
        }
        out
    }

    fn left_mul_generator(&self, g: usize) -> Self {
        let mut out = Self::zero(self.layout);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.left_mul_generator(g));
        }
        out
    }

    pub fn laplacian(&self, block: Block) -> Self {
        let mut out = Self::zero(self.layout);
        for var in self.layout.block_vars(block) {
            let i = self.layout.index(var).expect("block var");
            out = &out + &self.derive_index(i).derive_index(i);
        }
        out
    }

    /// Euler operator `Σ_j v_j ∂_{v_j}` over the block.
    pub fn euler(&self, block: Block) -> Self {
        let idx: Vec<usize> = self
            .layout
            .block_vars(block)
            .into_iter()
            .map(|v| self.layout.index(v).expect("block var"))
            .collect();
        let mut out = Self::zero(self.layout);
        for (m, c) in &self.terms {
            let d: u32 = idx.iter().map(|&i| m.0[i]).sum();
            out.add_term(m.clone(), c.scale(&int(i64::from(d))));
        }
        out
    }

    pub fn homogeneous_degree(&self) -> Degree {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => Degree::Zero,
            Some(d) if degrees.all(|e| e == d) => Degree::Homogeneous(d),
            Some(_) => Degree::Inhomogeneous,
        }
    }

    /// First term (canonical order) that depends on a variable outside
    /// `block`.
    pub fn foreign_term(&self, block: Block) -> Option<String> {
        let allowed: Vec<usize> = self
            .layout
            .block_vars(block)
            .into_iter()
            .map(|v| self.layout.index(v).expect("block var"))
            .collect();
        self.terms
            .iter()
            .find(|(m, _)| m.0.iter().enumerate().any(|(i, &e)| e > 0 && !allowed.contains(&i)))
            .map(|(m, c)| self.term_string(m, c))
    }

    /// Re-expresses the polynomial in `target`, mapping exponent slots with
    /// `slot_map[i] = new index of old slot i` and shifting every generator by
    /// `generator_offset`.
    pub(crate) fn relayout(&self, target: Layout, slot_map: &[usize], generator_offset: usize) -> Self {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.nvars()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[slot_map[i]] += e;
            }
            out.add_term(Monomial(exps), c.shifted(generator_offset, target.dim()));
        }
        out
    }

    /// Multivector value at a point given in layout variable order.
    pub fn eval(&self, point: &[f64]) -> Multivector<f64> {
        assert_eq!(point.len(), self.layout.nvars(), "point dimension");
        let mut out = Multivector::<f64>::zero(self.layout.dim());
        for (m, c) in &self.terms {
            let w: f64 = m
                .0
                .iter()
                .zip(point)
                .map(|(&e, &x)| x.powi(e as i32))
                .product();
            for (b, coef) in c.terms() {
                out.add_term(b, w * to_f64(coef));
            }
        }
        out
    }

    pub(crate) fn term_string(&self, m: &Monomial, c: &Multivector) -> String {
        let single = Self::monomial(self.layout, m.0.clone(), c.clone());
        single.to_string()
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Monomial, Multivector> {
        &self.terms
    }
}

impl fmt::Debug for CartesianPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CartesianPoly{} {}", self.layout, self)
    }
}

impl Add for &CartesianPoly {
    type Output = CartesianPoly;
    fn add(self, rhs: Self) -> CartesianPoly {
        assert_eq!(self.layout, rhs.layout, "polynomial layout mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CartesianPoly {
    type Output = CartesianPoly;
    fn sub(self, rhs: Self) -> CartesianPoly {
        self + &(-rhs)
    }
}

impl Neg for &CartesianPoly {
    type Output = CartesianPoly;
    fn neg(self) -> CartesianPoly {
        let mut out = CartesianPoly::zero(self.layout);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }
}

/// Product with geometric multiplication of coefficients (order preserved).
/// Panics on layout mismatch; see [`CartesianPoly::checked_mul`].
impl Mul for &CartesianPoly {
    type Output = CartesianPoly;
    fn mul(self, rhs: Self) -> CartesianPoly {
        assert_eq!(self.layout, rhs.layout, "polynomial layout mismatch");
        let mut acc: BTreeMap<Monomial, Multivector> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                if c.is_zero() {
                    continue;
                }
                match acc.get_mut(&Monomial(exps.clone())) {
                    Some(slot) => *slot = &*slot + &c,
                    None => {
                        acc.insert(Monomial(exps), c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        CartesianPoly {
            layout: self.layout,
            terms: acc,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Blade;
    use crate::scalar::rat;

    fn p3() -> Layout {
        Layout::biaxial(3, 0)
    }

    fn poly(layout: Layout, text: &str) -> CartesianPoly {
        parse_poly(text, layout).unwrap()
    }

    #[test]
    fn partial_derivative_examples() {
        let l = Layout::biaxial(2, 1);
        assert_eq!(
            poly(l, "x1^2*e12").partial_derivative(Var::X(1)).unwrap(),
            poly(l, "2*x1*e12")
        );
        assert!(poly(l, "x1").partial_derivative(Var::Y(1)).unwrap().is_zero());
        assert_eq!(poly(l, "x1*x2").partial_derivative(Var::X(1)).unwrap(), poly(l, "x2"));
        assert!(matches!(
            poly(l, "x1").partial_derivative(Var::Y(2)),
            Err(PolyError::UnknownVariable { .. })
        ));
    }

    #[test]
    fn dirac_examples() {
        let x = CartesianPoly::vector(p3(), Block::X);
        assert_eq!(x.dirac(Block::X), CartesianPoly::scalar(p3(), int(-3)));
        assert!(poly(p3(), "x1 - x2*e12").dirac(Block::X).is_zero());
        assert!(poly(p3(), "7/2*e13").dirac(Block::X).is_zero());
        assert!(poly(p3(), "7/2*e13").dirac(Block::Full).is_zero());
    }

    #[test]
    fn axial_dirac_includes_axis() {
        let l = Layout::axial(3);
        assert_eq!(poly(l, "x0").dirac(Block::Full), CartesianPoly::one(l));
        // ∂_{x0}(x0) + e1 e1 = 0
        assert!(poly(l, "x0 + y1*e1").dirac(Block::Full).is_zero());
    }

    #[test]
    fn laplacian_examples() {
        let l = p3();
        assert_eq!(
            CartesianPoly::norm_squared(l, Block::X).laplacian(Block::X),
            CartesianPoly::scalar(l, int(6))
        );
        assert_eq!(poly(l, "x1^3").laplacian(Block::X), poly(l, "6*x1"));
    }

    #[test]
    fn homogeneous_degree_examples() {
        let l = Layout::biaxial(1, 1);
        assert_eq!(poly(l, "x1^2*y1").homogeneous_degree(), Degree::Homogeneous(3));
        assert_eq!(poly(l, "x1 + x1^2").homogeneous_degree(), Degree::Inhomogeneous);
        assert_eq!(CartesianPoly::zero(l).homogeneous_degree(), Degree::Zero);
    }

    #[test]
    fn euler_on_homogeneous() {
        let l = Layout::biaxial(2, 2);
        let f = poly(l, "x1^2*y2 - 3/4*x2*y1*y2*e13 + x1*x2*x2");
        assert_eq!(f.euler(Block::Full), f.scale(&int(3)));
    }

    #[test]
    fn eval_point() {
        let l = Layout::biaxial(2, 0);
        let v = poly(l, "x1^2 - 2*x1*x2*e12").eval(&[0.5, 2.0]);
        assert_eq!(v.scalar_part(), 0.25);
        assert_eq!(v.coefficient(Blade::new(&[1, 2], 2).unwrap()), -2.0);
    }

    #[test]
    fn scale_by_zero_gives_zero() {
        assert!(poly(p3(), "x1*e1").scale(&rat(0, 1)).is_zero());
    }
}
