//! Holomorphic seeds, Funk-Hecke profiles and the monogenic transforms built
//! from them.

mod axial;
mod biaxial;
mod numeric;
mod profile;
mod seed;

pub use axial::{fueter_axial, fuesom_profiles};
pub use biaxial::{
    biaxial_transform, classify_power, verify_monogenic, CartesianForm, Classification, TransformRequest,
    TransformResult, VerifyReport,
};
pub use numeric::{
    biaxial_transform_numeric, numeric_dirac_residual, DiracResidual, NumericOptions, NumericValue, DEFAULT_QUAD_ORDER,
};
pub use profile::{funk_hecke_profile, FunkHeckeProfile};
pub use seed::{extract_uv, parse_holomorphic, ExactSeed, GaussianRational, HolomorphicInput, NumericSeed};

use thiserror::Error;

use crate::gegenbauer::GegenbauerError;
use crate::polyalg::PolyError;
use crate::radial::RadialError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("seed `{0}` has no exact form")]
    ExactSeedRequired(String),
    #[error("dimension p = {0} is below 3")]
    DimensionTooSmall(usize),
    #[error("dimension {0} must be odd")]
    EvenDimension(usize),
    #[error("monogenic mismatch: {0}")]
    MonogenicMismatch(String),
    #[error("point (r, rho) = ({r}, {rho}) is outside the region where the seed is usable")]
    OutsideValidity { r: f64, rho: f64 },
    #[error("quadrature did not settle by order {order} (last relative change {change:e})")]
    QuadratureNonConvergence { order: usize, change: f64 },
    #[error(transparent)]
    Radial(#[from] RadialError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gegenbauer(#[from] GegenbauerError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_poly, Block, Layout};
    use crate::radial::{BiaxialParams, LaurentBi, RadialElement, RadialVars, ScalarExt, Sector};
    use crate::scalar::{int, rat, Rational};

    fn run(h: &str, p: usize, q: usize, k: u32, l: u32) -> TransformResult {
        let seed = parse_holomorphic(h).unwrap();
        let req = TransformRequest::builtin(seed, BiaxialParams::new(p, q, k, l)).unwrap();
        biaxial_transform(&req).unwrap()
    }

    fn rr(terms: &[((i32, i32), Rational)]) -> LaurentBi {
        LaurentBi::from_terms(RadialVars::RRho, 0, terms.iter().cloned())
    }

    fn paper_form(params: BiaxialParams, m: LaurentBi, n: LaurentBi) -> RadialElement {
        RadialElement::biaxial(params)
            .with_sector(Sector::One, m)
            .unwrap()
            .with_sector(Sector::OmegaNu, n)
            .unwrap()
    }

    fn assert_matches_paper(res: &TransformResult, m: LaurentBi, n: LaurentBi) {
        let paper = TransformResult {
            radial: paper_form(res.request.params, m, n),
            ..res.clone()
        };
        assert_eq!(res.normalize().unwrap().radial, paper.normalize().unwrap().radial);
    }

    #[test]
    fn iz_example() {
        let res = run("i*z", 3, 3, 0, 0);
        assert_eq!(res.classification, Classification::NonPolynomial);
        assert!(res.cartesian.is_none());
        let norm = res.normalize().unwrap();
        assert_eq!(norm.normalization, ScalarExt::rational(int(-4)));
        assert_eq!(norm.m(), &rr(&[((0, -1), int(1))]));
        assert_eq!(norm.n(), &rr(&[((1, -2), rat(-1, 3))]));
        assert!(verify_monogenic(&res).unwrap().passed());
    }

    #[test]
    fn z4_example() {
        let res = run("z^4", 3, 3, 0, 0);
        assert_eq!(res.classification, Classification::Homogeneous(2));
        let norm = res.normalize().unwrap();
        assert_eq!(norm.normalization, ScalarExt::rational(int(16)));
        let layout = Layout::biaxial(3, 3);
        let expected = &parse_poly("-x1^2 - x2^2 - x3^2 + y1^2 + y2^2 + y3^2", layout).unwrap()
            + &parse_poly(
                "2/3*x1*y1*e14 + 2/3*x1*y2*e15 + 2/3*x1*y3*e16 + 2/3*x2*y1*e24 + 2/3*x2*y2*e25 \
                 + 2/3*x2*y3*e26 + 2/3*x3*y1*e34 + 2/3*x3*y2*e35 + 2/3*x3*y3*e36",
                layout,
            )
            .unwrap();
        assert_eq!(norm.cartesian.as_ref().unwrap().poly, expected);
        let report = verify_monogenic(&res).unwrap();
        assert_eq!(report.dirac_zero, Some(true));
        assert!(report.passed());
    }

    #[test]
    fn iz4_example() {
        let res = run("i*z^4", 4, 3, 1, 0);
        let m = rr(&[((2, -1), int(1)), ((0, 1), int(-6))]);
        let n = rr(&[((3, -2), rat(-1, 8)), ((1, 0), int(-1))]);
        assert_matches_paper(&res, m, n);
        assert_eq!(res.normalize().unwrap().normalization.pi_pow(), 1);
        assert!(verify_monogenic(&res).unwrap().passed());
    }

    #[test]
    fn z7_example() {
        let res = run("z^7", 3, 3, 1, 0);
        assert_eq!(res.classification, Classification::Homogeneous(4));
        let m = rr(&[((4, 0), int(3)), ((2, 2), int(-14)), ((0, 4), int(7))]);
        let n = rr(&[((3, 1), int(-4)), ((1, 3), rat(28, 5))]);
        assert_matches_paper(&res, m, n);
        assert!(verify_monogenic(&res).unwrap().passed());
    }

    #[test]
    fn zero_examples() {
        let res = run("z^3", 3, 3, 0, 0);
        assert_eq!(res.classification, Classification::Zero);
        assert_eq!(res.normalize().unwrap(), res);
        assert!(verify_monogenic(&res).unwrap().passed());
    }

    #[test]
    fn normalize_is_idempotent() {
        let norm = run("z^4", 3, 3, 0, 0).normalize().unwrap();
        assert!(norm.is_normalized());
        let again = norm.normalize().unwrap();
        assert_eq!(again.radial, norm.radial);
        assert_eq!(again.normalization, norm.normalization);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_power(4, 0, 0, 3, 3).unwrap(), Classification::Homogeneous(2));
        assert_eq!(classify_power(7, 1, 0, 3, 3).unwrap(), Classification::Homogeneous(4));
        assert_eq!(classify_power(3, 0, 0, 3, 3).unwrap(), Classification::Zero);
        assert!(classify_power(3, 0, 0, 3, 4).is_err());
    }

    #[test]
    fn request_validation() {
        let params = BiaxialParams::new(3, 4, 0, 0);
        assert_eq!(
            TransformRequest::builtin(ExactSeed::power(2), params).unwrap_err(),
            TransformError::EvenDimension(4)
        );
        let params = BiaxialParams::new(2, 3, 0, 0);
        assert_eq!(
            TransformRequest::builtin(ExactSeed::power(2), params).unwrap_err(),
            TransformError::DimensionTooSmall(2)
        );
        let pk = crate::polyalg::builtin_monogenic(Block::Y, 3, 0).unwrap();
        let pl = crate::polyalg::builtin_monogenic(Block::Y, 3, 0).unwrap();
        assert!(matches!(
            TransformRequest::new(ExactSeed::power(2), 3, 3, pk, pl),
            Err(TransformError::MonogenicMismatch(_))
        ));
    }

    #[test]
    fn sweep_is_monogenic_and_classified() {
        for p in [3usize, 4, 5] {
            for q in [3usize, 5] {
                for k in 0..=2 {
                    for l in 0..=1 {
                        for n in 0..=10 {
                            let params = BiaxialParams::new(p, q, k, l);
                            let req = TransformRequest::builtin(ExactSeed::power(n), params).unwrap();
                            let res = biaxial_transform(&req).unwrap();
                            assert!(verify_monogenic(&res).unwrap().passed(), "n={n} {params:?}");
                            let predicted = classify_power(n, k, l, p, q).unwrap();
                            assert_eq!(res.classification, predicted, "n={n} {params:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn linearity() {
        let params = BiaxialParams::new(3, 3, 1, 0);
        let h1 = parse_holomorphic("z^5 + 3*z^3").unwrap();
        let h2 = parse_holomorphic("2/3*z^7 - z").unwrap();
        let a = GaussianRational::real(rat(3, 2));
        let b = GaussianRational::real(int(-5));
        let combo = h1.scale(&a).add(&h2.scale(&b));
        let raw = |h: &ExactSeed| biaxial_transform(&TransformRequest::builtin(h.clone(), params).unwrap()).unwrap();
        let lhs = raw(&combo).radial;
        let rhs = raw(&h1)
            .radial
            .scale(&rat(3, 2))
            .checked_add(&raw(&h2).radial.scale(&int(-5)))
            .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(raw(&combo).classification, Classification::Inhomogeneous);
    }
}
