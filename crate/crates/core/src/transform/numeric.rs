//! Floating-point path for seeds without a polynomial form.

use std::sync::Arc;

use num_complex::Complex64;

use super::{NumericSeed, TransformError};
use crate::clifford::Multivector;
use crate::gegenbauer::{gauss_jacobi_rule, gegenbauer_for_dim, QuadratureRule};
use crate::polyalg::{Layout, SphericalMonogenic};
use crate::radial::BiaxialParams;
use crate::scalar::to_f64;

pub const DEFAULT_QUAD_ORDER: usize = 64;
const MAX_QUAD_ORDER: usize = 512;
const QUAD_AGREEMENT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericOptions {
    /// Starting quadrature order; doubled until two orders agree.
    pub quad_order: usize,
    /// Base finite-difference step for the radial Laplacian. `None` picks
    /// one from the number of Laplacians.
    pub fd_step: Option<f64>,
    /// Step of the Cartesian Dirac check.
    pub dirac_step: f64,
    /// A point is flagged when halving the step moves the result by more
    /// than `10 * tol` (relative).
    pub tol: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            quad_order: DEFAULT_QUAD_ORDER,
            fd_step: None,
            dirac_step: 1e-3,
            tol: 1e-8,
        }
    }
}

impl NumericOptions {
    /// Defaults, with `FFH_QUAD_ORDER` overriding the quadrature order.
    pub fn from_env() -> Self {
        let mut opts = Self::default();
        if let Some(n) = std::env::var("FFH_QUAD_ORDER").ok().and_then(|s| s.trim().parse().ok()) {
            if n >= 1 {
                opts.quad_order = n;
            }
        }
        opts
    }
}

/// `M` and `N` at one point, with the numerical settings that produced them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericValue {
    pub m: f64,
    pub n: f64,
    pub quad_order: usize,
    /// Steps in `r` and `ρ`.
    pub step: (f64, f64),
    /// Relative change when the step is halved.
    pub richardson_rel: f64,
    pub flagged: bool,
}

struct Profiles<'a> {
    seed: &'a NumericSeed,
    rule: Arc<QuadratureRule>,
    ck: Vec<f64>,
    ck1: Vec<f64>,
    k: i32,
}

impl<'a> Profiles<'a> {
    fn new(seed: &'a NumericSeed, p: usize, k: u32, order: usize) -> Result<Self, TransformError> {
        let rule = gauss_jacobi_rule(order, p)?;
        let c = gegenbauer_for_dim(k, p)?;
        let c1 = gegenbauer_for_dim(k + 1, p)?;
        let (n0, n1) = (to_f64(&c.at_one()), to_f64(&c1.at_one()));
        let ck = rule.nodes().iter().map(|&t| c.eval_f64(t) / n0).collect();
        let ck1 = rule.nodes().iter().map(|&t| c1.eval_f64(t) / n1).collect();
        Ok(Profiles {
            seed,
            rule,
            ck,
            ck1,
            k: k as i32,
        })
    }

    /// `(A, B)` at `(r, ρ)`.
    fn ab(&self, r: f64, rho: f64) -> Result<(f64, f64), TransformError> {
        let outside = TransformError::OutsideValidity { r, rho };
        if !(r > 0.0 && rho > 0.0) {
            return Err(outside);
        }
        let (mut a, mut b) = (0.0, 0.0);
        for (i, (&t, &w)) in self.rule.nodes().iter().zip(self.rule.weights()).enumerate() {
            let theta = r * t;
            if !self.seed.is_valid(theta, rho) {
                return Err(outside);
            }
            let h = self.seed.eval(Complex64::new(theta, rho));
            a += w * h.re * self.ck[i];
            b += w * h.im * self.ck1[i];
        }
        let s = r.powi(-self.k);
        Ok((a * s, b * s))
    }
}

fn choose_order(seed: &NumericSeed, p: usize, k: u32, start: usize, r: f64, rho: f64) -> Result<Profiles<'_>, TransformError> {
    let mut lo = start.clamp(1, MAX_QUAD_ORDER / 2);
    let mut prev = Profiles::new(seed, p, k, lo)?.ab(r, rho)?;
    loop {
        let hi = 2 * lo;
        let profiles = Profiles::new(seed, p, k, hi)?;
        let cur = profiles.ab(r, rho)?;
        let scale = prev.0.abs().max(prev.1.abs()).max(cur.0.abs()).max(cur.1.abs());
        let change = if scale == 0.0 {
            0.0
        } else {
            (prev.0 - cur.0).abs().max((prev.1 - cur.1).abs()) / scale
        };
        if change <= QUAD_AGREEMENT {
            return Ok(profiles);
        }
        if hi >= MAX_QUAD_ORDER {
            return Err(TransformError::QuadratureNonConvergence { order: hi, change });
        }
        lo = hi;
        prev = cur;
    }
}

fn d1(f: [f64; 5], h: f64) -> f64 {
    // f = [f(−2h), f(−h), f(0), f(h), f(2h)]
    (-f[4] + 8.0 * f[3] - 8.0 * f[1] + f[0]) / (12.0 * h)
}

fn d2(f: [f64; 5], h: f64) -> f64 {
    (-f[4] + 16.0 * f[3] - 30.0 * f[2] + 16.0 * f[1] - f[0]) / (12.0 * h * h)
}

struct Stencil<'a> {
    profiles: &'a Profiles<'a>,
    cx: f64,
    cy: f64,
    hr: f64,
    hrho: f64,
}

impl Stencil<'_> {
    /// Sectors `(s1, sων)` after `level` Laplacians.
    fn eval(&self, level: u32, r: f64, rho: f64) -> Result<(f64, f64), TransformError> {
        if level == 0 {
            let (a, b) = self.profiles.ab(r, rho)?;
            return Ok((a, -b));
        }
        let mut gr = [(0.0, 0.0); 5];
        let mut grho = [(0.0, 0.0); 5];
        let center = self.eval(level - 1, r, rho)?;
        for (i, (gr, grho)) in gr.iter_mut().zip(grho.iter_mut()).enumerate() {
            let s = i as f64 - 2.0;
            if i == 2 {
                *gr = center;
                *grho = center;
            } else {
                *gr = self.eval(level - 1, r + s * self.hr, rho)?;
                *grho = self.eval(level - 1, r, rho + s * self.hrho)?;
            }
        }
        let pick = |v: &[(f64, f64); 5], second: bool| -> [f64; 5] {
            let mut out = [0.0; 5];
            for (o, x) in out.iter_mut().zip(v) {
                *o = if second { x.1 } else { x.0 };
            }
            out
        };
        let (m_r, n_r) = (pick(&gr, false), pick(&gr, true));
        let (m_rho, n_rho) = (pick(&grho, false), pick(&grho, true));
        let m = d2(m_r, self.hr) + self.cx * d1(m_r, self.hr) / r + d2(m_rho, self.hrho)
            + self.cy * d1(m_rho, self.hrho) / rho;
        // ∂_v(g/v) = g_v/v − g/v²
        let n0 = n_r[2];
        let n = d2(n_r, self.hr)
            + self.cx * (d1(n_r, self.hr) / r - n0 / (r * r))
            + d2(n_rho, self.hrho)
            + self.cy * (d1(n_rho, self.hrho) / rho - n0 / (rho * rho));
        Ok((m, n))
    }
}

fn default_step(laplacians: u32) -> f64 {
    if laplacians <= 1 {
        1e-3
    } else {
        // extrapolated values are 6th order; balance h^6 against ε/h^{2n}
        f64::EPSILON.powf(1.0 / (6.0 + 2.0 * f64::from(laplacians)))
    }
}

/// `M`, `N` of the biaxial transform at `(r, ρ)`: quadrature for `A`, `B`
/// and nested 4th-order central differences for the Laplacians, evaluated
/// at steps `h` and `h/2` and Richardson-extrapolated.
pub fn biaxial_transform_numeric(
    seed: &NumericSeed,
    params: BiaxialParams,
    point: (f64, f64),
    opts: &NumericOptions,
) -> Result<NumericValue, TransformError> {
    let BiaxialParams { p, q, k, l } = params;
    if p < 3 {
        return Err(TransformError::DimensionTooSmall(p));
    }
    if q % 2 == 0 {
        return Err(TransformError::EvenDimension(q));
    }
    let (r, rho) = point;
    let profiles = choose_order(seed, p, k, opts.quad_order, r, rho)?;
    let laplacians = l + (q as u32 - 1) / 2;
    let base = opts.fd_step.unwrap_or_else(|| default_step(laplacians));
    let run = |base: f64| {
        let st = Stencil {
            profiles: &profiles,
            cx: f64::from(2 * k) + p as f64 - 1.0,
            cy: f64::from(2 * l) + q as f64 - 1.0,
            hr: base * r.max(1.0),
            hrho: base * rho.max(1.0),
        };
        st.eval(laplacians, r, rho).map(|v| (v, (st.hr, st.hrho)))
    };
    let ((mut m, mut n), step) = run(base)?;
    let mut richardson_rel = 0.0;
    if laplacians > 0 {
        let ((m2, n2), _) = run(base / 2.0)?;
        let scale = m.abs().max(n.abs()).max(f64::MIN_POSITIVE);
        richardson_rel = (m - m2).abs().max((n - n2).abs()) / scale;
        // both stencils are 4th order, so this cancels the h^4 term
        m = (16.0 * m2 - m) / 15.0;
        n = (16.0 * n2 - n) / 15.0;
    }
    Ok(NumericValue {
        m,
        n,
        quad_order: profiles.rule.order(),
        step,
        richardson_rel,
        flagged: richardson_rel > 10.0 * opts.tol,
    })
}

/// Central-difference Dirac image of a numerically evaluated field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracResidual {
    /// Max-norm of the Dirac image.
    pub abs: f64,
    /// Max-norm of the field itself at the point.
    pub field_norm: f64,
}

impl DiracResidual {
    /// `abs / field_norm`; unaffected by rescaling the field.
    pub fn relative(&self) -> f64 {
        if self.field_norm == 0.0 {
            self.abs
        } else {
            self.abs / self.field_norm
        }
    }
}

/// Dirac image of `(M + ωνN) P_k(x) P_ℓ(y)` at the Cartesian point `(x, y)`
/// by 4th-order central differences.
pub fn numeric_dirac_residual(
    seed: &NumericSeed,
    pk: &SphericalMonogenic,
    pl: &SphericalMonogenic,
    point: &[f64],
    opts: &NumericOptions,
) -> Result<DiracResidual, TransformError> {
    let (p, q) = (pk.dim(), pl.dim());
    let layout = Layout::biaxial(p, q);
    let pk_full = pk.embed(layout)?;
    let pl_full = pl.embed(layout)?;
    let params = BiaxialParams::new(p, q, pk.degree(), pl.degree());
    let dim = p + q;
    assert_eq!(point.len(), dim, "point dimension");

    let field = |pt: &[f64]| -> Result<Multivector<f64>, TransformError> {
        let r = pt[..p].iter().map(|x| x * x).sum::<f64>().sqrt();
        let rho = pt[p..].iter().map(|y| y * y).sum::<f64>().sqrt();
        let v = biaxial_transform_numeric(seed, params, (r, rho), opts)?;
        let mut omega = vec![0.0; dim];
        let mut nu = vec![0.0; dim];
        for j in 0..p {
            omega[j] = pt[j] / r;
        }
        for j in p..dim {
            nu[j] = pt[j] / rho;
        }
        let on = &Multivector::vector(dim, &omega) * &Multivector::vector(dim, &nu);
        let radial = &Multivector::scalar(dim, v.m) + &on.scale(&v.n);
        let mono = &pk_full.eval(pt) * &pl_full.eval(pt);
        Ok(&radial * &mono)
    };

    let mut total = Multivector::<f64>::zero(dim);
    let mut shifted = point.to_vec();
    for j in 0..dim {
        let h = opts.dirac_step * point[j].abs().max(1.0);
        let mut vals = Vec::with_capacity(4);
        for s in [-2.0, -1.0, 1.0, 2.0] {
            shifted[j] = point[j] + s * h;
            vals.push(field(&shifted)?);
        }
        shifted[j] = point[j];
        let mut deriv = &(&vals[0] - &vals[3]) + &(&vals[2] - &vals[1]).scale(&8.0);
        deriv = deriv.scale(&(1.0 / (12.0 * h)));
        total = &total + &deriv.left_mul_generator(j + 1);
    }
    Ok(DiracResidual {
        abs: total.max_norm(),
        field_norm: field(point)?.max_norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{biaxial_transform, parse_holomorphic, TransformRequest};

    fn exact_mn(h: &str, params: BiaxialParams, r: f64, rho: f64) -> (f64, f64) {
        let req = TransformRequest::builtin(parse_holomorphic(h).unwrap(), params).unwrap();
        let res = biaxial_transform(&req).unwrap();
        (res.m().eval(r, rho), res.n().eval(r, rho))
    }

    fn rel(a: f64, b: f64, scale: f64) -> f64 {
        (a - b).abs() / scale.max(f64::MIN_POSITIVE)
    }

    #[test]
    fn coherence_with_exact_path() {
        let cases = [
            ("i*z", BiaxialParams::new(3, 3, 0, 0), (1.0, 1.0)),
            ("z^4", BiaxialParams::new(3, 3, 0, 0), (2.0, 1.0 / 3.0)),
            ("z^7", BiaxialParams::new(3, 3, 1, 0), (0.7, 1.3)),
            ("i*z^4", BiaxialParams::new(4, 3, 1, 0), (1.5, 0.8)),
        ];
        for (h, params, (r, rho)) in cases {
            let seed = parse_holomorphic(h).unwrap().to_numeric();
            let v = biaxial_transform_numeric(&seed, params, (r, rho), &NumericOptions::default()).unwrap();
            let (m, n) = exact_mn(h, params, r, rho);
            let scale = m.abs().max(n.abs());
            assert!(rel(v.m, m, scale) < 1e-8, "{h}: M {} vs {m}", v.m);
            assert!(rel(v.n, n, scale) < 1e-8, "{h}: N {} vs {n}", v.n);
            assert!(!v.flagged, "{h}");
        }
    }

    #[test]
    fn coherence_at_random_points() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        let cases = [
            ("z^4", BiaxialParams::new(3, 3, 0, 0)),
            ("i*z^5 + z^3", BiaxialParams::new(5, 3, 1, 0)),
            ("z^6", BiaxialParams::new(3, 5, 0, 0)),
        ];
        for (h, params) in cases {
            let seed = parse_holomorphic(h).unwrap().to_numeric();
            for _ in 0..10 {
                let (r, rho) = (rng.gen_range(0.3..2.0), rng.gen_range(0.3..2.0));
                let v = biaxial_transform_numeric(&seed, params, (r, rho), &NumericOptions::default()).unwrap();
                let (m, n) = exact_mn(h, params, r, rho);
                let scale = m.abs().max(n.abs());
                assert!(rel(v.m, m, scale) < 1e-8 && rel(v.n, n, scale) < 1e-8, "{h} at ({r}, {rho}): {v:?} vs {m}, {n}");
            }
        }
    }

    #[test]
    fn validity_is_enforced() {
        let seed = NumericSeed::inverse_one_plus_z2();
        let params = BiaxialParams::new(3, 3, 0, 0);
        let opts = NumericOptions::default();
        assert!(matches!(
            biaxial_transform_numeric(&seed, params, (0.5, 0.9), &opts),
            Err(TransformError::OutsideValidity { .. })
        ));
        assert!(biaxial_transform_numeric(&seed, params, (-0.5, 2.0), &opts).is_err());
        assert!(biaxial_transform_numeric(&seed, BiaxialParams::new(3, 4, 0, 0), (0.5, 2.0), &opts).is_err());
        assert!(biaxial_transform_numeric(&seed, params, (0.5, 2.0), &opts).is_ok());
    }

    #[test]
    fn dirac_residual_is_small() {
        use crate::polyalg::{builtin_monogenic, Block};
        let pk = builtin_monogenic(Block::X, 3, 0).unwrap();
        let pl = builtin_monogenic(Block::Y, 3, 0).unwrap();
        let opts = NumericOptions::default();
        let z4 = parse_holomorphic("z^4").unwrap().to_numeric();
        let pt = [0.4, -0.3, 0.5, 0.9, 1.1, -0.6];
        let res = numeric_dirac_residual(&z4, &pk, &pl, &pt, &opts).unwrap();
        assert!(res.relative() < 1e-5, "{res:?}");
        let seed = NumericSeed::inverse_one_plus_z2();
        let pt = [0.3, 0.2, -0.4, 1.0, 0.9, 0.8];
        let res = numeric_dirac_residual(&seed, &pk, &pl, &pt, &opts).unwrap();
        assert!(res.abs < 1e-5 && res.relative() < 1e-5, "{res:?}");
    }
}
