use std::fmt;

use serde::{Deserialize, Serialize};

use super::{LaurentBi, RadialError, RadialVars, ScalarExt, Which};
use crate::clifford::Multivector;
use crate::polyalg::{Block, CartesianPoly, Layout, SphericalMonogenic};
use crate::scalar::{int, Rational};

/// One of the structural factors `1, ω, ν, ων`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sector {
    One,
    Omega,
    Nu,
    OmegaNu,
}

impl Sector {
    /// Canonical order.
    pub const ALL: [Sector; 4] = [Sector::One, Sector::Omega, Sector::Nu, Sector::OmegaNu];

    pub fn from_powers(omega: u8, nu: u8) -> Self {
        match (omega & 1, nu & 1) {
            (0, 0) => Sector::One,
            (1, 0) => Sector::Omega,
            (0, _) => Sector::Nu,
            _ => Sector::OmegaNu,
        }
    }

    pub fn omega(self) -> u8 {
        matches!(self, Sector::Omega | Sector::OmegaNu) as u8
    }

    pub fn nu(self) -> u8 {
        matches!(self, Sector::Nu | Sector::OmegaNu) as u8
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Suffix used in the text form.
    pub fn label(self) -> &'static str {
        match self {
            Sector::One => "1",
            Sector::Omega => "w",
            Sector::Nu => "n",
            Sector::OmegaNu => "wn",
        }
    }

    /// `self · other = sign · sector`, from `ω² = ν² = −1`, `νω = −ων`.
    pub fn product(self, other: Sector) -> (i8, Sector) {
        let mut sign = 1i8;
        if self.nu() == 1 && other.omega() == 1 {
            sign = -sign;
        }
        if self.omega() == 1 && other.omega() == 1 {
            sign = -sign;
        }
        if self.nu() == 1 && other.nu() == 1 {
            sign = -sign;
        }
        (
            sign,
            Sector::from_powers(self.omega() + other.omega(), self.nu() + other.nu()),
        )
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Geometry behind one radial variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RadialBlock {
    /// A scalar axis (`θ` or `x0`); the Laplacian contribution is `∂²`.
    Axis,
    /// A block `R^dim` carrying a spherical monogenic of the given degree.
    Sphere { dim: usize, degree: u32 },
}

impl RadialBlock {
    fn laplacian(self, g: &LaurentBi, which: Which, unit_power: u8) -> LaurentBi {
        let gvv = g.derivative(which).derivative(which);
        match self {
            RadialBlock::Axis => gvv,
            RadialBlock::Sphere { dim, degree } => {
                let c = int(2 * i64::from(degree) + dim as i64 - 1);
                let tail = if unit_power == 0 {
                    g.derivative(which).shift_var(which, -1)
                } else {
                    g.shift_var(which, -1).derivative(which)
                };
                gvv.add_same_source(&tail.scale(&c))
            }
        }
    }
}

/// `(p, q, k, ℓ)` of a biaxial problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiaxialParams {
    pub p: usize,
    pub q: usize,
    pub k: u32,
    pub l: u32,
}

impl BiaxialParams {
    pub fn new(p: usize, q: usize, k: u32, l: u32) -> Self {
        BiaxialParams { p, q, k, l }
    }
}

/// `(s1 + sω·ω + sν·ν + sων·ων)` multiplying the spherical monogenics of the
/// two blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadialElement {
    vars: RadialVars,
    first: RadialBlock,
    second: RadialBlock,
    sectors: [LaurentBi; 4],
}

impl RadialElement {
    fn empty(vars: RadialVars, first: RadialBlock, second: RadialBlock) -> Self {
        let z = LaurentBi::zero(vars);
        RadialElement {
            vars,
            first,
            second,
            sectors: [z.clone(), z.clone(), z.clone(), z],
        }
    }

    /// Zero element in `(r, ρ)` for `R^p ⊕ R^q`.
    pub fn biaxial(params: BiaxialParams) -> Self {
        Self::empty(
            RadialVars::RRho,
            RadialBlock::Sphere {
                dim: params.p,
                degree: params.k,
            },
            RadialBlock::Sphere {
                dim: params.q,
                degree: params.l,
            },
        )
    }

    /// Zero element in `(x0, R)` for the axial setting on `R^{m+1}`.
    pub fn axial(m: usize, k: u32) -> Self {
        Self::empty(
            RadialVars::AxisR,
            RadialBlock::Axis,
            RadialBlock::Sphere { dim: m, degree: k },
        )
    }

    /// Zero element in `(θ, ρ)`; `ω` then stands for the fixed unit `t`.
    pub fn embedded(q: usize, l: u32) -> Self {
        Self::empty(
            RadialVars::ThetaRho,
            RadialBlock::Axis,
            RadialBlock::Sphere { dim: q, degree: l },
        )
    }

    pub fn vars(&self) -> RadialVars {
        self.vars
    }

    pub fn first_block(&self) -> RadialBlock {
        self.first
    }

    pub fn second_block(&self) -> RadialBlock {
        self.second
    }

    /// Parameters when both blocks are spheres.
    pub fn params(&self) -> Option<BiaxialParams> {
        match (self.first, self.second) {
            (
                RadialBlock::Sphere { dim: p, degree: k },
                RadialBlock::Sphere { dim: q, degree: l },
            ) => Some(BiaxialParams { p, q, k, l }),
            _ => None,
        }
    }

    pub fn sector(&self, s: Sector) -> &LaurentBi {
        &self.sectors[s.index()]
    }

    pub fn sectors(&self) -> impl Iterator<Item = (Sector, &LaurentBi)> + '_ {
        Sector::ALL.iter().map(move |&s| (s, &self.sectors[s.index()]))
    }

    pub fn set_sector(&mut self, s: Sector, f: LaurentBi) -> Result<(), RadialError> {
        if f.vars() != self.vars {
            return Err(RadialError::VarMismatch(self.vars, f.vars()));
        }
        self.sectors[s.index()] = f;
        Ok(())
    }

    pub fn with_sector(mut self, s: Sector, f: LaurentBi) -> Result<Self, RadialError> {
        self.set_sector(s, f)?;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.iter().all(LaurentBi::is_zero)
    }

    fn same_shape(&self, other: &Self) -> Result<(), RadialError> {
        if self.vars != other.vars || self.first != other.first || self.second != other.second {
            return Err(RadialError::ShapeMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RadialError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for i in 0..4 {
            out.sectors[i] = self.sectors[i].checked_add(&other.sectors[i])?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RadialError> {
        self.checked_add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        self.map(|f| f.scale(factor))
    }

    pub fn scale_ext(&self, factor: &ScalarExt) -> Self {
        self.map(|f| f.scale_ext(factor))
    }

    pub fn checked_div_ext(&self, divisor: &ScalarExt) -> Result<Self, RadialError> {
        let mut out = self.clone();
        for f in out.sectors.iter_mut() {
            *f = f.checked_div_ext(divisor)?;
        }
        Ok(out)
    }

    fn map(&self, op: impl Fn(&LaurentBi) -> LaurentBi) -> Self {
        let mut out = self.clone();
        for f in out.sectors.iter_mut() {
            *f = op(f);
        }
        out
    }

    /// First nonzero coefficient in canonical order (sector order, then
    /// lexicographic on exponents).
    pub fn leading(&self) -> Option<(Sector, (i32, i32), ScalarExt)> {
        self.sectors()
            .find_map(|(s, f)| f.leading().map(|(e, c)| (s, e, c)))
    }

    /// Power of π shared by all nonzero sectors.
    pub fn common_pi(&self) -> Result<u32, RadialError> {
        let mut found: Option<u32> = None;
        for f in self.sectors.iter().filter(|f| !f.is_zero()) {
            match found {
                None => found = Some(f.pi_pow()),
                Some(s) if s != f.pi_pow() => return Err(RadialError::MixedPi(s, f.pi_pow())),
                _ => {}
            }
        }
        Ok(found.unwrap_or(0))
    }

    /// Splits off the common π power: `self = π^s · rest`.
    pub fn strip_pi(&self) -> Result<(u32, RadialElement), RadialError> {
        let s = self.common_pi()?;
        let rest = self.checked_div_ext(&ScalarExt::new(int(1), s))?;
        Ok((s, rest))
    }

    /// Applies the (semi-)Laplacian sector-wise; sectors never mix.
    pub fn radial_laplacian(&self) -> Self {
        let mut out = self.clone();
        for s in Sector::ALL {
            let g = &self.sectors[s.index()];
            if g.is_zero() {
                continue;
            }
            let lx = self.first.laplacian(g, Which::First, s.omega());
            let ly = self.second.laplacian(g, Which::Second, s.nu());
            out.sectors[s.index()] = lx.add_same_source(&ly);
        }
        out
    }

    pub fn iterated_radial_laplacian(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |e, _| e.radial_laplacian())
    }

    /// Sector values at a point, before multiplying by the monogenics.
    pub fn eval(&self, first: f64, second: f64) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (o, f) in out.iter_mut().zip(&self.sectors) {
            *o = f.eval(first, second);
        }
        out
    }

    /// Cartesian polynomial represented by the element.
    ///
    /// Biaxial elements need both monogenics, axial ones only `pl` (the
    /// monogenic of the `R^m` block, given in the y block). Coefficients
    /// must be rational; use [`RadialElement::strip_pi`] first otherwise.
    pub fn to_cartesian(
        &self,
        pk: Option<&SphericalMonogenic>,
        pl: &SphericalMonogenic,
    ) -> Result<CartesianPoly, RadialError> {
        let layout = match (self.vars, self.first, self.second) {
            (RadialVars::RRho, RadialBlock::Sphere { dim: p, .. }, RadialBlock::Sphere { dim: q, .. }) => {
                Layout::biaxial(p, q)
            }
            (RadialVars::AxisR, RadialBlock::Axis, RadialBlock::Sphere { dim, .. }) => Layout::axial(dim),
            _ => return Err(RadialError::NoCartesianForm(self.vars)),
        };
        check_monogenic(pl, Block::Y, self.second)?;
        let pk_poly = match (self.first, pk) {
            (RadialBlock::Sphere { .. }, Some(pk)) => {
                check_monogenic(pk, Block::X, self.first)?;
                Some(pk.embed(layout)?)
            }
            (RadialBlock::Sphere { .. }, None) => {
                return Err(RadialError::MonogenicMismatch("missing x-block monogenic".into()))
            }
            (RadialBlock::Axis, Some(_)) => {
                return Err(RadialError::MonogenicMismatch(
                    "an axial element takes no x-block monogenic".into(),
                ))
            }
            (RadialBlock::Axis, None) => None,
        };
        let pl_poly = pl.embed(layout)?;
        let pi = self.common_pi()?;
        if pi != 0 {
            return Err(RadialError::IrrationalCoefficient { pi_pow: pi });
        }

        let dim = layout.dim();
        let mut r2 = Powers::new(CartesianPoly::norm_squared(layout, Block::X));
        let mut rho2 = Powers::new(CartesianPoly::norm_squared(layout, Block::Y));
        let x_vec = CartesianPoly::vector(layout, Block::X);
        let y_vec = CartesianPoly::vector(layout, Block::Y);
        let mut result = CartesianPoly::zero(layout);

        for (s, f) in self.sectors() {
            if f.is_zero() {
                continue;
            }
            let (eps, delta) = (s.omega() as i32, s.nu() as i32);
            let mut radial = CartesianPoly::zero(layout);
            for (&(a, b), c) in f.rational_terms() {
                let bad = || RadialError::NotCartesianConvertible {
                    sector: s,
                    term: LaurentBi::from_terms(self.vars, 0, [((a, b), c.clone())]).to_string(),
                };
                let first = match self.first {
                    RadialBlock::Axis => {
                        if eps != 0 || a < 0 {
                            return Err(bad());
                        }
                        let mut exps = vec![0u32; layout.nvars()];
                        exps[0] = a as u32;
                        CartesianPoly::monomial(layout, exps, Multivector::one(dim))
                    }
                    RadialBlock::Sphere { .. } => {
                        let e = a - eps;
                        if e < 0 || e % 2 != 0 {
                            return Err(bad());
                        }
                        r2.get((e / 2) as u32).clone()
                    }
                };
                let e = b - delta;
                if e < 0 || e % 2 != 0 {
                    return Err(bad());
                }
                let term = &first * rho2.get((e / 2) as u32);
                radial = &radial + &term.scale(c);
            }
            let mut factor = radial;
            if eps == 1 {
                factor = &factor * &x_vec;
            }
            if delta == 1 {
                factor = &factor * &y_vec;
            }
            if let Some(pk) = &pk_poly {
                factor = &factor * pk;
            }
            factor = &factor * &pl_poly;
            result = &result + &factor;
        }
        Ok(result)
    }

    pub fn to_latex(&self) -> String {
        let suffix = |s: Sector| match s {
            Sector::One => "",
            Sector::Omega => "\\underline{\\omega}",
            Sector::Nu => "\\underline{\\nu}",
            Sector::OmegaNu => "\\underline{\\omega}\\,\\underline{\\nu}",
        };
        let parts: Vec<String> = self
            .sectors()
            .filter(|(_, f)| !f.is_zero())
            .map(|(s, f)| {
                if s == Sector::One {
                    f.to_latex()
                } else {
                    format!("\\left({}\\right){}", f.to_latex(), suffix(s))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn check_monogenic(
    m: &SphericalMonogenic,
    block: Block,
    expected: RadialBlock,
) -> Result<(), RadialError> {
    match expected {
        RadialBlock::Sphere { dim, degree }
            if m.block() == block && m.dim() == dim && m.degree() == degree =>
        {
            Ok(())
        }
        _ => Err(RadialError::MonogenicMismatch(format!(
            "expected {expected:?} in the {block:?} block, got degree {} in R^{} ({:?} block)",
            m.degree(),
            m.dim(),
            m.block()
        ))),
    }
}

/// Lazily extended powers of one polynomial.
struct Powers {
    base: CartesianPoly,
    cache: Vec<CartesianPoly>,
}

impl Powers {
    fn new(base: CartesianPoly) -> Self {
        let one = CartesianPoly::one(base.layout());
        Powers {
            base,
            cache: vec![one],
        }
    }

    fn get(&mut self, n: u32) -> &CartesianPoly {
        while self.cache.len() <= n as usize {
            let next = self.cache.last().expect("nonempty") * &self.base;
            self.cache.push(next);
        }
        &self.cache[n as usize]
    }
}

/// `(s1) + (sω)*w + (sν)*n + (sων)*wn`, omitting zero sectors.
impl fmt::Display for RadialElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, g) in self.sectors().filter(|(_, g)| !g.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match s {
                Sector::One => write!(f, "({g})")?,
                _ => write!(f, "({g})*{}", s.label())?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
