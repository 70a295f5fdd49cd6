use std::fmt;

use serde::{Deserialize, Serialize};

use super::{funk_hecke_profile, ExactSeed, TransformError};
use crate::polyalg::{builtin_monogenic, Block, CartesianPoly, Degree, SphericalMonogenic};
use crate::radial::{
    vekua_residual_biaxial, BiaxialParams, LaurentBi, RadialElement, RadialError, ScalarExt, Sector,
};

/// Shape of a transform result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Zero,
    /// `H · P_k P_ℓ` with `H` homogeneous of this degree.
    Homogeneous(u32),
    /// Polynomial, but `H` mixes degrees (seeds with several powers).
    Inhomogeneous,
    NonPolynomial,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Zero => write!(f, "Zero"),
            Classification::Homogeneous(d) => write!(f, "Homogeneous({d})"),
            Classification::Inhomogeneous => write!(f, "Inhomogeneous"),
            Classification::NonPolynomial => write!(f, "NonPolynomial"),
        }
    }
}

/// Validated inputs of the biaxial transform.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformRequest {
    pub seed: ExactSeed,
    pub params: BiaxialParams,
    pub pk: SphericalMonogenic,
    pub pl: SphericalMonogenic,
}

fn check_dims(p: usize, q: usize) -> Result<(), TransformError> {
    if p < 3 {
        return Err(TransformError::DimensionTooSmall(p));
    }
    if q.is_multiple_of(2) {
        return Err(TransformError::EvenDimension(q));
    }
    Ok(())
}

impl TransformRequest {
    /// `pk` must be an x-block monogenic on `R^p`, `pl` a y-block one on `R^q`.
    pub fn new(
        seed: ExactSeed,
        p: usize,
        q: usize,
        pk: SphericalMonogenic,
        pl: SphericalMonogenic,
    ) -> Result<Self, TransformError> {
        check_dims(p, q)?;
        if pk.block() != Block::X || pk.dim() != p {
            return Err(TransformError::MonogenicMismatch(format!(
                "P_k must live in the x block of R^{p}"
            )));
        }
        if pl.block() != Block::Y || pl.dim() != q {
            return Err(TransformError::MonogenicMismatch(format!(
                "P_l must live in the y block of R^{q}"
            )));
        }
        let params = BiaxialParams::new(p, q, pk.degree(), pl.degree());
        Ok(TransformRequest { seed, params, pk, pl })
    }

    /// Uses the built-in monogenics of degrees `k` and `ℓ`.
    pub fn builtin(seed: ExactSeed, params: BiaxialParams) -> Result<Self, TransformError> {
        check_dims(params.p, params.q)?;
        let pk = builtin_monogenic(Block::X, params.p, params.k)?;
        let pl = builtin_monogenic(Block::Y, params.q, params.l)?;
        Self::new(seed, params.p, params.q, pk, pl)
    }

    /// `ℓ + (q − 1)/2`.
    pub fn laplacian_power(&self) -> u32 {
        self.params.l + (self.params.q as u32 - 1) / 2
    }
}

/// Cartesian polynomial `poly · π^pi_pow`.
#[derive(Debug, Clone, PartialEq)]
pub struct CartesianForm {
    pub poly: CartesianPoly,
    pub pi_pow: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformResult {
    pub request: TransformRequest,
    /// Sectors `M = s1`, `N = sων`; the others stay zero.
    pub radial: RadialElement,
    pub cartesian: Option<CartesianForm>,
    pub classification: Classification,
    /// Product of all divisors applied so far; raw results carry 1.
    pub normalization: ScalarExt,
}

impl TransformResult {
    pub fn m(&self) -> &LaurentBi {
        self.radial.sector(Sector::One)
    }

    pub fn n(&self) -> &LaurentBi {
        self.radial.sector(Sector::OmegaNu)
    }

    pub fn is_normalized(&self) -> bool {
        self.radial
            .leading()
            .is_none_or(|(_, _, c)| c == ScalarExt::one())
    }

    /// Divides by the first nonzero coefficient in canonical order. Zero
    /// results come back unchanged.
    pub fn normalize(&self) -> Result<TransformResult, TransformError> {
        let Some((_, _, lead)) = self.radial.leading() else {
            return Ok(self.clone());
        };
        let radial = self.radial.checked_div_ext(&lead)?;
        let cartesian = match &self.cartesian {
            Some(c) => Some(CartesianForm {
                poly: c.poly.scale(&lead.rat().recip()),
                pi_pow: c
                    .pi_pow
                    .checked_sub(lead.pi_pow())
                    .ok_or(RadialError::NegativePiPower)?,
            }),
            None => None,
        };
        Ok(TransformResult {
            request: self.request.clone(),
            radial,
            cartesian,
            classification: self.classification,
            normalization: self.normalization.mul(&lead),
        })
    }
}

/// `(Δ_x + Δ_y)^{ℓ+(q−1)/2} ((A − ων B) P_k P_ℓ)`, kept raw.
pub fn biaxial_transform(request: &TransformRequest) -> Result<TransformResult, TransformError> {
    let params = request.params;
    let profile = funk_hecke_profile(&request.seed, params.p, params.k)?;
    let start = RadialElement::biaxial(params)
        .with_sector(Sector::One, profile.a)?
        .with_sector(Sector::OmegaNu, profile.b.neg())?;
    let radial = start.iterated_radial_laplacian(request.laplacian_power());
    let cartesian = cartesian_form(&radial, request)?;
    let classification = classify_result(&radial, cartesian.as_ref(), params);
    Ok(TransformResult {
        request: request.clone(),
        radial,
        cartesian,
        classification,
        normalization: ScalarExt::one(),
    })
}

fn cartesian_form(
    radial: &RadialElement,
    request: &TransformRequest,
) -> Result<Option<CartesianForm>, TransformError> {
    let (pi_pow, rest) = radial.strip_pi()?;
    match rest.to_cartesian(Some(&request.pk), &request.pl) {
        Ok(poly) => Ok(Some(CartesianForm { poly, pi_pow })),
        Err(RadialError::NotCartesianConvertible { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn classify_result(
    radial: &RadialElement,
    cartesian: Option<&CartesianForm>,
    params: BiaxialParams,
) -> Classification {
    if radial.is_zero() {
        return Classification::Zero;
    }
    match cartesian.map(|c| c.poly.homogeneous_degree()) {
        None => Classification::NonPolynomial,
        Some(Degree::Zero) => Classification::Zero,
        Some(Degree::Homogeneous(d)) => Classification::Homogeneous(d - params.k - params.l),
        Some(Degree::Inhomogeneous) => Classification::Inhomogeneous,
    }
}

/// Predicted shape of the transform of `z^n`.
pub fn classify_power(n: u32, k: u32, l: u32, p: usize, q: usize) -> Result<Classification, TransformError> {
    check_dims(p, q)?;
    let threshold = k + 2 * l + q as u32 - 1;
    if (n + k) % 2 == 1 || n < threshold {
        Ok(Classification::Zero)
    } else {
        Ok(Classification::Homogeneous(n - threshold))
    }
}

/// Outcome of [`verify_monogenic`].
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    /// `None` when the result has no Cartesian form.
    pub dirac_zero: Option<bool>,
    pub vekua: (LaurentBi, LaurentBi),
    /// The `ω` and `ν` sectors must stay empty.
    pub shape_ok: bool,
}

impl VerifyReport {
    pub fn vekua_zero(&self) -> bool {
        self.vekua.0.is_zero() && self.vekua.1.is_zero()
    }

    pub fn passed(&self) -> bool {
        self.shape_ok && self.vekua_zero() && self.dirac_zero != Some(false)
    }
}

/// Exact checks: Vekua residuals of `(M, N)` and, when available, the
/// Cartesian Dirac image.
pub fn verify_monogenic(res: &TransformResult) -> Result<VerifyReport, TransformError> {
    let vekua = vekua_residual_biaxial(res.m(), res.n(), res.request.params)?;
    let dirac_zero = res
        .cartesian
        .as_ref()
        .map(|c| c.poly.dirac(Block::Full).is_zero());
    let shape_ok = res.radial.sector(Sector::Omega).is_zero() && res.radial.sector(Sector::Nu).is_zero();
    Ok(VerifyReport {
        dirac_zero,
        vekua,
        shape_ok,
    })
}
