//! Exact arithmetic in the real Clifford algebra R_{0,m}.
//!
//! Generators satisfy `e_j e_k + e_k e_j = -2 δ_jk`. A [`Blade`] is a product
//! of distinct generators in increasing order and is stored as a bitmask;
//! a [`Multivector`] is a sparse map from blades to coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// Largest supported algebra dimension.
pub const MAX_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("invalid blade {indices:?} for dimension {dim}")]
    InvalidBlade { indices: Vec<usize>, dim: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("unsupported algebra dimension {0} (max {MAX_DIM})")]
    UnsupportedDimension(usize),
}

/// Basis element `e_A`, `A ⊂ {1..m}`. Bit `j-1` set means `e_j` is a factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Builds a blade from strictly increasing 1-based indices.
    pub fn new(indices: &[usize], dim: usize) -> Result<Self, CliffordError> {
        let invalid = || CliffordError::InvalidBlade {
            indices: indices.to_vec(),
            dim,
        };
        let mut mask = 0u32;
        let mut prev = 0usize;
        for &j in indices {
            if j == 0 || j > dim || j <= prev || j > MAX_DIM {
                return Err(invalid());
            }
            mask |= 1 << (j - 1);
            prev = j;
        }
        Ok(Blade(mask))
    }

    /// The generator `e_j` (1-based).
    pub fn generator(j: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&j), "generator index {j} out of range");
        Blade(1 << (j - 1))
    }

    pub fn from_mask(mask: u32) -> Self {
        Blade(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    /// Highest generator index used, 0 for the scalar blade.
    pub fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn is_valid_for(self, dim: usize) -> bool {
        self.max_index() <= dim
    }

    /// Renumbers every generator `e_j` to `e_{j+offset}`.
    pub fn shifted(self, offset: usize) -> Self {
        Blade(self.0 << offset)
    }

    /// Geometric product of basis blades: `self * other = sign * result`.
    pub fn product(self, other: Blade) -> (i8, Blade) {
        // transpositions needed to move each factor of `other` past the
        // larger factors of `self`
        let mut swaps = 0u32;
        let mut b = other.0;
        while b != 0 {
            let low = b.trailing_zeros();
            swaps += (self.0 >> (low + 1)).count_ones();
            b &= b - 1;
        }
        // each shared generator contributes e_j^2 = -1
        swaps += (self.0 & other.0).count_ones();
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        (sign, Blade(self.0 ^ other.0))
    }
}

/// Blade order: by grade, then lexicographic on the index list.
impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `e12`-style label; empty for the scalar blade. Indices above 9 are
/// bracketed (`e{10}`) since the concatenated form is ambiguous there.
impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return Ok(());
        }
        let idx = self.indices();
        if idx.iter().all(|&j| j <= 9) {
            write!(f, "e")?;
            for j in idx {
                write!(f, "{j}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = idx.iter().map(|j| j.to_string()).collect();
            write!(f, "e{{{}}}", parts.join(","))
        }
    }
}

/// Sign and result blade of `a * b` in R_{0,m}.
pub fn blade_product(a: Blade, b: Blade, m: usize) -> Result<(i8, Blade), CliffordError> {
    for blade in [a, b] {
        if !blade.is_valid_for(m) {
            return Err(CliffordError::InvalidBlade {
                indices: blade.indices(),
                dim: m,
            });
        }
    }
    Ok(a.product(b))
}

/// Element of R_{0,m} with coefficients in `S`. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq)]
pub struct Multivector<S: Scalar = Rational> {
    dim: usize,
    terms: BTreeMap<Blade, S>,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(dim: usize) -> Self {
        Multivector {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, value: S) -> Self {
        Self::from_blade(dim, Blade::SCALAR, value)
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, S::one())
    }

    pub fn from_blade(dim: usize, blade: Blade, value: S) -> Self {
        assert!(blade.is_valid_for(dim), "blade {blade} outside dimension {dim}");
        let mut mv = Self::zero(dim);
        mv.add_term(blade, value);
        mv
    }

    /// The generator `e_j`.
    pub fn generator(dim: usize, j: usize) -> Self {
        Self::from_blade(dim, Blade::generator(j), S::one())
    }

    /// Vector `Σ c_j e_j` with `coords[j-1] = c_j`.
    pub fn vector(dim: usize, coords: &[S]) -> Self {
        let mut mv = Self::zero(dim);
        for (i, c) in coords.iter().enumerate() {
            mv.add_term(Blade::generator(i + 1), c.clone());
        }
        mv
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical blade order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &S)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, blade: Blade) -> S {
        self.terms.get(&blade).cloned().unwrap_or_else(S::zero)
    }

    pub fn scalar_part(&self) -> S {
        self.coefficient(Blade::SCALAR)
    }

    pub fn add_term(&mut self, blade: Blade, value: S) {
        if value.is_zero() {
            return;
        }
        match self.terms.get_mut(&blade) {
            Some(c) => {
                let sum = c.clone() + value;
                if sum.is_zero() {
                    self.terms.remove(&blade);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(blade, value);
            }
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = Self::zero(self.dim);
        if factor.is_zero() {
            return out;
        }
        for (b, c) in &self.terms {
            out.add_term(*b, c.clone() * factor.clone());
        }
        out
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self, CliffordError> {
        if self.dim != other.dim {
            return Err(CliffordError::DimensionMismatch(self.dim, other.dim));
        }
        Ok(self.mul_same_dim(other))
    }

    fn mul_same_dim(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (sign, blade) = a.product(*b);
                let c = ca.clone() * cb.clone();
                out.add_term(blade, if sign < 0 { -c } else { c });
            }
        }
        out
    }

    /// `e_j * self`.
    pub fn left_mul_generator(&self, j: usize) -> Self {
        let g = Blade::generator(j);
        let mut out = Self::zero(self.dim);
        for (b, c) in &self.terms {
            let (sign, blade) = g.product(*b);
            out.add_term(blade, if sign < 0 { -c.clone() } else { c.clone() });
        }
        out
    }

    pub fn grade_project(&self, grade: usize) -> Self {
        Multivector {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.grade() == grade)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|b| b.grade() % 2 == 0)
    }

    /// True when every blade is even and built only from generators
    /// `lo..=hi`.
    pub fn is_even_over(&self, lo: usize, hi: usize) -> bool {
        let allowed = generator_range_mask(lo, hi);
        self.terms
            .keys()
            .all(|b| b.grade() % 2 == 0 && b.mask() & !allowed == 0)
    }

    /// Renumbers generators `e_j -> e_{j+offset}` inside an algebra of
    /// dimension `new_dim`.
    pub fn shifted(&self, offset: usize, new_dim: usize) -> Self {
        let mut out = Self::zero(new_dim);
        for (b, c) in &self.terms {
            let s = b.shifted(offset);
            assert!(s.is_valid_for(new_dim), "shifted blade {s} outside {new_dim}");
            out.add_term(s, c.clone());
        }
        out
    }

    /// Same coefficients in a larger algebra.
    pub fn embedded(&self, new_dim: usize) -> Self {
        self.shifted(0, new_dim)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Multivector<T> {
        let mut out = Multivector::zero(self.dim);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }
}

impl Multivector<f64> {
    /// Largest absolute coefficient.
    pub fn max_norm(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }
}

fn generator_range_mask(lo: usize, hi: usize) -> u32 {
    if hi < lo {
        return 0;
    }
    (lo..=hi).fold(0u32, |m, j| m | (1 << (j - 1)))
}

impl<S: Scalar> fmt::Debug for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(b, c)| (b.to_string(), c)))
            .finish()
    }
}

impl fmt::Display for Multivector<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::from_integer(0.into());
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag == Rational::from_integer(1.into());
            match (*b == Blade::SCALAR, unit) {
                (true, _) => write!(f, "{}", format_rational(&mag))?,
                (false, true) => write!(f, "{b}")?,
                (false, false) => write!(f, "{}*{b}", format_rational(&mag))?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> Add for &Multivector<S> {
    type Output = Multivector<S>;
    fn add(self, rhs: Self) -> Multivector<S> {
        assert_eq!(self.dim, rhs.dim, "multivector dimension mismatch");
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, rhs: Self) -> Multivector<S> {
        assert_eq!(self.dim, rhs.dim, "multivector dimension mismatch");
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, -c.clone());
        }
        out
    }
}

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        self.map(|c| -c.clone())
    }
}

/// Geometric product. Panics on dimension mismatch; see
/// [`Multivector::geometric_product`] for the checked form.
impl<S: Scalar> Mul for &Multivector<S> {
    type Output = Multivector<S>;
    fn mul(self, rhs: Self) -> Multivector<S> {
        assert_eq!(self.dim, rhs.dim, "multivector dimension mismatch");
        self.mul_same_dim(rhs)
    }
}

/// JSON term: `{"blade":[1,2],"coef":"3/5"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BladeTermJson {
    pub blade: Vec<usize>,
    pub coef: String,
}

impl Multivector<Rational> {
    pub fn to_json_terms(&self) -> Vec<BladeTermJson> {
        self.terms
            .iter()
            .map(|(b, c)| BladeTermJson {
                blade: b.indices(),
                coef: format_rational(c),
            })
            .collect()
    }

    pub fn from_json_terms(dim: usize, terms: &[BladeTermJson]) -> Result<Self, CliffordError> {
        let mut mv = Self::zero(dim);
        for t in terms {
            let blade = Blade::new(&t.blade, dim)?;
            let c = parse_rational(&t.coef).ok_or_else(|| CliffordError::InvalidBlade {
                indices: t.blade.clone(),
                dim,
            })?;
            mv.add_term(blade, c);
        }
        Ok(mv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn blade(idx: &[usize]) -> Blade {
        Blade::new(idx, 6).unwrap()
    }

    fn mv(dim: usize, terms: &[(&[usize], Rational)]) -> Multivector {
        let mut m = Multivector::zero(dim);
        for (idx, c) in terms {
            m.add_term(Blade::new(idx, dim).unwrap(), c.clone());
        }
        m
    }

    #[test]
    fn blade_product_examples() {
        assert_eq!(blade_product(blade(&[1]), blade(&[1]), 3), Ok((-1, blade(&[]))));
        assert_eq!(blade_product(blade(&[1, 2]), blade(&[2]), 3), Ok((-1, blade(&[1]))));
        assert_eq!(blade_product(blade(&[1]), blade(&[2]), 3), Ok((1, blade(&[1, 2]))));
    }

    #[test]
    fn blade_out_of_range() {
        assert!(Blade::new(&[4], 3).is_err());
        assert!(Blade::new(&[2, 1], 3).is_err());
        assert!(Blade::new(&[0], 3).is_err());
        assert!(matches!(
            blade_product(blade(&[5]), blade(&[1]), 3),
            Err(CliffordError::InvalidBlade { .. })
        ));
    }

    #[test]
    fn geometric_product_examples() {
        let e12 = mv(3, &[(&[1, 2], int(1))]);
        assert_eq!(&e12 * &e12, Multivector::scalar(3, int(-1)));

        let a = mv(3, &[(&[], int(1)), (&[1, 2], int(1))]);
        let b = mv(3, &[(&[], int(1)), (&[1, 2], int(-1))]);
        assert_eq!(&a * &b, Multivector::scalar(3, int(2)));

        let x = mv(3, &[(&[1], int(1))]);
        let y = mv(3, &[(&[1], int(1)), (&[2], int(1))]);
        assert_eq!(&x * &y, mv(3, &[(&[], int(-1)), (&[1, 2], int(1))]));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = Multivector::<Rational>::one(2);
        let b = Multivector::<Rational>::one(3);
        assert_eq!(a.geometric_product(&b), Err(CliffordError::DimensionMismatch(2, 3)));
    }

    #[test]
    fn grade_projection_examples() {
        let v = mv(3, &[(&[], int(-1)), (&[1, 2], int(1))]);
        assert_eq!(v.grade_project(0), Multivector::scalar(3, int(-1)));
        assert_eq!(v.grade_project(2), mv(3, &[(&[1, 2], int(1))]));
        assert!(mv(3, &[(&[1], int(1))]).grade_project(0).is_zero());
    }

    #[test]
    fn even_predicate() {
        assert!(mv(3, &[(&[], int(1)), (&[1, 2], int(3))]).is_even());
        assert!(!mv(3, &[(&[1], int(1))]).is_even());
        assert!(Multivector::<Rational>::zero(3).is_even());
        assert!(mv(6, &[(&[4, 5], int(1))]).is_even_over(4, 6));
        assert!(!mv(6, &[(&[1, 5], int(1))]).is_even_over(4, 6));
    }

    #[test]
    fn anticommutation_exhaustive() {
        for m in 1..=6 {
            for j in 1..=m {
                let ej = Multivector::<Rational>::generator(m, j);
                assert_eq!(&ej * &ej, Multivector::scalar(m, int(-1)));
                for k in 1..=m {
                    if j == k {
                        continue;
                    }
                    let ek = Multivector::<Rational>::generator(m, k);
                    assert_eq!(&ej * &ek, -&(&ek * &ej));
                }
            }
        }
    }

    #[test]
    fn disjoint_even_blades_commute() {
        for m in 2..=6 {
            for p in 1..m {
                let lower = (1u32 << p) - 1;
                let upper = ((1u32 << m) - 1) & !lower;
                for a in 0..(1u32 << m) {
                    for b in 0..(1u32 << m) {
                        let (ba, bb) = (Blade::from_mask(a), Blade::from_mask(b));
                        if a & !lower != 0 || b & !upper != 0 {
                            continue;
                        }
                        if ba.grade() % 2 != 0 || bb.grade() % 2 != 0 {
                            continue;
                        }
                        assert_eq!(ba.product(bb), bb.product(ba));
                    }
                }
            }
        }
    }

    #[test]
    fn display_and_json() {
        let v = mv(3, &[(&[], rat(-1, 2)), (&[1, 3], rat(3, 5)), (&[2], int(-1))]);
        assert_eq!(v.to_string(), "-1/2 - e2 + 3/5*e13");
        let back = Multivector::from_json_terms(3, &v.to_json_terms()).unwrap();
        assert_eq!(back, v);
        assert_eq!(
            serde_json::to_string(&v.to_json_terms()[2]).unwrap(),
            r#"{"blade":[1,3],"coef":"3/5"}"#
        );
    }

    #[test]
    fn canonical_blade_order() {
        let mut bl = vec![blade(&[2, 3]), blade(&[1]), blade(&[]), blade(&[1, 3]), blade(&[3])];
        bl.sort();
        assert_eq!(
            bl,
            vec![blade(&[]), blade(&[1]), blade(&[3]), blade(&[1, 3]), blade(&[2, 3])]
        );
    }
}
