//! Exact construction of biaxial monogenic functions from holomorphic seeds.

pub mod catalog;
pub mod cli;
pub mod clifford;
pub mod gegenbauer;
pub mod polyalg;
pub mod radial;
pub mod scalar;
pub mod transform;
mod text;
