use crate::clifford::Multivector;
use crate::polyalg::{CartesianPoly, Degree, Layout};

use super::{gauss_jacobi_rule, gegenbauer_for_dim, GegenbauerError};

const POLAR_NODES: usize = 64;
const AZIMUTH_NODES: usize = 128;

/// Both sides of the Funk-Hecke identity on `S²`, component by component.
#[derive(Debug, Clone, PartialEq)]
pub struct FunkHeckeComparison {
    pub lhs: Multivector<f64>,
    pub rhs: Multivector<f64>,
}

impl FunkHeckeComparison {
    pub fn abs_diff(&self) -> f64 {
        (&self.lhs - &self.rhs).max_norm()
    }

    /// Difference relative to `max(1, |rhs|)`.
    pub fn relative_diff(&self) -> f64 {
        self.abs_diff() / self.rhs.max_norm().max(1.0)
    }
}

/// `∫_{S²} F(<ξ,η>) Y_k(η) dS(η)` by a Gauss-Legendre × trapezoid grid,
/// against `Y_k(ξ) · |S¹| / C_k(1) · ∫ F C_k dt`.
///
/// `yk` must be a homogeneous polynomial on `R³` (no axis variable), scalar
/// or Clifford-valued; harmonicity is the caller's business.
pub fn funk_hecke_oracle(
    f: impl Fn(f64) -> f64,
    yk: &CartesianPoly,
    xi: [f64; 3],
) -> Result<FunkHeckeComparison, GegenbauerError> {
    if yk.layout() != Layout::biaxial(3, 0) {
        return Err(GegenbauerError::OracleInput(format!(
            "expected a polynomial in x1..x3, got layout {}",
            yk.layout()
        )));
    }
    let k = match yk.homogeneous_degree() {
        Degree::Zero => 0,
        Degree::Homogeneous(k) => k,
        Degree::Inhomogeneous => {
            return Err(GegenbauerError::OracleInput("Y_k is not homogeneous".into()))
        }
    };
    let norm = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(GegenbauerError::NonUnitVector(norm));
    }

    let polar = gauss_jacobi_rule(POLAR_NODES, 3)?;
    let dim = yk.layout().dim();
    let mut lhs = Multivector::<f64>::zero(dim);
    let dphi = 2.0 * std::f64::consts::PI / AZIMUTH_NODES as f64;
    for (&c, &w) in polar.nodes().iter().zip(polar.weights()) {
        let s = (1.0 - c * c).sqrt();
        for j in 0..AZIMUTH_NODES {
            let phi = j as f64 * dphi;
            let eta = [s * phi.cos(), s * phi.sin(), c];
            let t = xi[0] * eta[0] + xi[1] * eta[1] + xi[2] * eta[2];
            let weight = w * dphi * f(t);
            lhs = &lhs + &yk.eval(&eta).scale(&weight);
        }
    }

    let ck = gegenbauer_for_dim(k, 3)?;
    let line = gauss_jacobi_rule(POLAR_NODES, 3)?;
    let integral = line.integrate(|t| f(t) * ck.eval_f64(t));
    let factor = 2.0 * std::f64::consts::PI * integral / ck.eval_f64(1.0);
    let rhs = yk.eval(&xi).scale(&factor);
    Ok(FunkHeckeComparison { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{builtin_monogenic, parse_poly, Block};

    fn l3() -> Layout {
        Layout::biaxial(3, 0)
    }

    #[test]
    fn constant_and_odd() {
        let one = CartesianPoly::one(l3());
        let c = funk_hecke_oracle(|_| 1.0, &one, [0.0, 0.0, 1.0]).unwrap();
        let four_pi = 4.0 * std::f64::consts::PI;
        assert!((c.lhs.scalar_part() - four_pi).abs() < 1e-10);
        assert!((c.rhs.scalar_part() - four_pi).abs() < 1e-10);
        let c = funk_hecke_oracle(|t| t, &one, [0.6, 0.0, 0.8]).unwrap();
        assert!(c.lhs.max_norm() < 1e-12 && c.rhs.max_norm() < 1e-12);
    }

    #[test]
    fn battery() {
        let s = 1.0 / 3f64.sqrt();
        let xis = [[1.0, 0.0, 0.0], [0.0, 0.6, 0.8], [s, s, s]];
        let ys = [
            parse_poly("x1", l3()).unwrap(),
            parse_poly("x1*x2", l3()).unwrap(),
            parse_poly("x1^2 - x3^2", l3()).unwrap(),
            parse_poly("x1^3 - 3*x1*x2^2", l3()).unwrap(),
            builtin_monogenic(Block::X, 3, 2).unwrap().local().clone(),
            builtin_monogenic(Block::X, 3, 3).unwrap().local().clone(),
        ];
        let fs: [fn(f64) -> f64; 3] = [|t| t * t, |t| (2.0 * t).exp(), |t| 1.0 / (2.0 - t)];
        for xi in xis {
            for y in &ys {
                for f in fs {
                    let c = funk_hecke_oracle(f, y, xi).unwrap();
                    assert!(c.relative_diff() < 1e-8, "{y} at {xi:?}: {c:?}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let y = parse_poly("x1", l3()).unwrap();
        assert!(matches!(
            funk_hecke_oracle(|t| t, &y, [1.0, 1.0, 0.0]),
            Err(GegenbauerError::NonUnitVector(_))
        ));
        let bad = parse_poly("x1 + 1", l3()).unwrap();
        assert!(funk_hecke_oracle(|t| t, &bad, [1.0, 0.0, 0.0]).is_err());
        let wrong = CartesianPoly::one(Layout::biaxial(4, 0));
        assert!(funk_hecke_oracle(|t| t, &wrong, [1.0, 0.0, 0.0]).is_err());
    }
}
