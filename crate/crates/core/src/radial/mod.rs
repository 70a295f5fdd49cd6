//! Closed radial representation of biaxial and axial functions.
//!
//! A [`RadialElement`] stores four Laurent coefficients in front of the
//! structural units `1, ω, ν, ων` (`ω = x/r`, `ν = y/ρ`), all multiplying
//! `P_k(x) P_ℓ(y)`. The Laplacian acts on it sector by sector.

mod element;
mod laurent;
mod scalar_ext;
mod vekua;

pub use element::{BiaxialParams, RadialBlock, RadialElement, Sector};
pub use laurent::{LaurentBi, RadialVars, Which};
pub use scalar_ext::ScalarExt;
pub use vekua::{vekua_residual_axial, vekua_residual_biaxial};

use thiserror::Error;

use crate::polyalg::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RadialError {
    #[error("cannot add terms carrying pi^{0} and pi^{1}")]
    MixedPi(u32, u32),
    #[error("radial variables differ: {0:?} vs {1:?}")]
    VarMismatch(RadialVars, RadialVars),
    #[error("radial elements have different block structure")]
    ShapeMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division would leave a negative power of pi")]
    NegativePiPower,
    #[error("not Cartesian-convertible: sector {sector} term `{term}`")]
    NotCartesianConvertible { sector: Sector, term: String },
    #[error("coefficients carry pi^{pi_pow}; strip it before converting")]
    IrrationalCoefficient { pi_pow: u32 },
    #[error("elements in {0:?} have no Cartesian form")]
    NoCartesianForm(RadialVars),
    #[error("spherical monogenic does not match the element: {0}")]
    MonogenicMismatch(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
