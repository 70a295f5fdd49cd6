use super::{BiaxialParams, LaurentBi, RadialError, Which};
use crate::scalar::int;

fn check_pair(a: &LaurentBi, b: &LaurentBi) -> Result<(), RadialError> {
    if a.vars() != b.vars() {
        return Err(RadialError::VarMismatch(a.vars(), b.vars()));
    }
    Ok(())
}

/// Residuals of `∂_r M + ∂_ρ N + ((2ℓ+q−1)/ρ) N` and
/// `∂_ρ M − ∂_r N − ((2k+p−1)/r) N`.
pub fn vekua_residual_biaxial(
    m: &LaurentBi,
    n: &LaurentBi,
    params: BiaxialParams,
) -> Result<(LaurentBi, LaurentBi), RadialError> {
    check_pair(m, n)?;
    let cy = int(2 * i64::from(params.l) + params.q as i64 - 1);
    let cx = int(2 * i64::from(params.k) + params.p as i64 - 1);
    let r1 = m
        .derivative(Which::First)
        .checked_add(&n.derivative(Which::Second))?
        .checked_add(&n.shift(0, -1).scale(&cy))?;
    let r2 = m
        .derivative(Which::Second)
        .checked_sub(&n.derivative(Which::First))?
        .checked_sub(&n.shift(-1, 0).scale(&cx))?;
    Ok((r1, r2))
}

/// Residuals of `∂_{x0} A − ∂_R B − ((2k+m−1)/R) B` and `∂_R A + ∂_{x0} B`.
///
/// The same system in `(θ, ρ)` with `(ℓ, q)` in place of `(k, m)` describes
/// the embedded axial case.
pub fn vekua_residual_axial(
    a: &LaurentBi,
    b: &LaurentBi,
    k: u32,
    m: usize,
) -> Result<(LaurentBi, LaurentBi), RadialError> {
    check_pair(a, b)?;
    let c = int(2 * i64::from(k) + m as i64 - 1);
    let r1 = a
        .derivative(Which::First)
        .checked_sub(&b.derivative(Which::Second))?
        .checked_sub(&b.shift(0, -1).scale(&c))?;
    let r2 = a
        .derivative(Which::Second)
        .checked_add(&b.derivative(Which::First))?;
    Ok((r1, r2))
}
