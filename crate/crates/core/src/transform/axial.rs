use super::{extract_uv, ExactSeed, TransformError};
use crate::polyalg::{Block, SphericalMonogenic};
use crate::radial::{LaurentBi, RadialElement, RadialVars, Sector, Which};

fn check_odd(d: usize) -> Result<(), TransformError> {
    if d.is_multiple_of(2) {
        Err(TransformError::EvenDimension(d))
    } else {
        Ok(())
    }
}

/// `M = (ρ⁻¹∂_ρ)^n u`, `N = (∂_ρ ρ⁻¹)^n v` with `n = ℓ + (q−1)/2`, in `(θ, ρ)`.
pub fn fuesom_profiles(h: &ExactSeed, q: usize, l: u32) -> Result<(LaurentBi, LaurentBi), TransformError> {
    check_odd(q)?;
    let n = l + (q as u32 - 1) / 2;
    let (u, v) = extract_uv(h);
    Ok((u.ladder_i(Which::Second, n), v.ladder_ii(Which::Second, n)))
}

/// `Δ^{k+(m−1)/2} ((u(x0, R) + ν v(x0, R)) P_k)` on `R^{1+m}`.
///
/// `pk` is a y-block monogenic on `R^m`, the block that the axial layout
/// names `x1..xm`.
pub fn fueter_axial(h: &ExactSeed, m: usize, pk: &SphericalMonogenic) -> Result<RadialElement, TransformError> {
    check_odd(m)?;
    if pk.block() != Block::Y || pk.dim() != m {
        return Err(TransformError::MonogenicMismatch(format!(
            "P_k must be a monogenic on the R^{m} block of the axial layout"
        )));
    }
    let k = pk.degree();
    let (u, v) = extract_uv(h);
    let start = RadialElement::axial(m, k)
        .with_sector(Sector::One, u.with_vars(RadialVars::AxisR))?
        .with_sector(Sector::Nu, v.with_vars(RadialVars::AxisR))?;
    Ok(start.iterated_radial_laplacian(k + (m as u32 - 1) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::builtin_monogenic;
    use crate::radial::vekua_residual_axial;
    use crate::scalar::int;

    fn tr(terms: &[((i32, i32), i64)]) -> LaurentBi {
        LaurentBi::from_terms(RadialVars::ThetaRho, 0, terms.iter().map(|(e, c)| (*e, int(*c))))
    }

    #[test]
    fn fuesom_examples() {
        let (m, n) = fuesom_profiles(&ExactSeed::power(3), 3, 0).unwrap();
        assert_eq!(m, tr(&[((1, 0), -6)]));
        assert_eq!(n, tr(&[((0, 1), -2)]));
        let (m, n) = fuesom_profiles(&ExactSeed::power(1), 3, 0).unwrap();
        assert!(m.is_zero() && n.is_zero());
        let (m, n) = fuesom_profiles(&ExactSeed::power(2), 3, 0).unwrap();
        assert_eq!(m, tr(&[((0, 0), -2)]));
        assert!(n.is_zero());
        assert!(fuesom_profiles(&ExactSeed::power(2), 4, 0).is_err());
    }

    #[test]
    fn fueter_examples() {
        let p0 = builtin_monogenic(Block::Y, 3, 0).unwrap();
        let e = fueter_axial(&ExactSeed::power(3), 3, &p0).unwrap();
        let (r1, r2) = vekua_residual_axial(e.sector(Sector::One), e.sector(Sector::Nu), 0, 3).unwrap();
        assert!(r1.is_zero() && r2.is_zero());
        assert!(!e.is_zero());
        assert!(fueter_axial(&ExactSeed::power(0), 3, &p0).unwrap().is_zero());
        assert!(fueter_axial(&ExactSeed::power(1), 3, &p0).unwrap().is_zero());
        assert!(fueter_axial(&ExactSeed::power(1), 4, &p0).is_err());
        let wrong = builtin_monogenic(Block::X, 3, 0).unwrap();
        assert!(fueter_axial(&ExactSeed::power(1), 3, &wrong).is_err());
    }

    #[test]
    fn fueter_is_monogenic_in_cartesian_form() {
        for k in 0..=2 {
            let pk = builtin_monogenic(Block::Y, 3, k).unwrap();
            for n in 0..=6 {
                let e = fueter_axial(&ExactSeed::power(n), 3, &pk).unwrap();
                let c = e.to_cartesian(None, &pk).unwrap();
                assert!(c.dirac(Block::Full).is_zero(), "n={n} k={k}");
            }
        }
    }
}
