use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;

use super::{monomial_moment, GegenbauerError};

/// Gauss rule for the weight `(1 − t²)^{(p−3)/2}` on `[−1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    p: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Ascending abscissae.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }
}

type Cache = Mutex<HashMap<(usize, usize), Arc<QuadratureRule>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached Gauss-Jacobi rule with `α = β = (p−3)/2`.
pub fn gauss_jacobi_rule(order: usize, p: usize) -> Result<Arc<QuadratureRule>, GegenbauerError> {
    if let Some(rule) = cache().lock().expect("quadrature cache").get(&(order, p)) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(build(order, p)?);
    cache()
        .lock()
        .expect("quadrature cache")
        .insert((order, p), rule.clone());
    Ok(rule)
}

/// Monic recurrence coefficient `β_j` for `λ = (p−2)/2`, `j ≥ 1`.
fn beta(j: usize, lambda: f64) -> f64 {
    let j = j as f64;
    j * (j + 2.0 * lambda - 1.0) / (4.0 * (j + lambda) * (j + lambda - 1.0))
}

/// Orthonormal values `p̂_0..p̂_{n}` at `t` and `p̂_n'(t)`.
fn orthonormal(t: f64, n: usize, sqrt_beta: &[f64], mu0: f64) -> (Vec<f64>, f64) {
    let mut vals = Vec::with_capacity(n + 1);
    let mut prev = 0.0;
    let mut cur = 1.0 / mu0.sqrt();
    let mut dprev = 0.0;
    let mut dcur = 0.0;
    vals.push(cur);
    for j in 0..n {
        let prev_b = if j == 0 { 0.0 } else { sqrt_beta[j - 1] };
        let next = (t * cur - prev_b * prev) / sqrt_beta[j];
        let dnext = (cur + t * dcur - prev_b * dprev) / sqrt_beta[j];
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
        vals.push(cur);
    }
    (vals, dcur)
}

fn build(order: usize, p: usize) -> Result<QuadratureRule, GegenbauerError> {
    if order == 0 {
        return Err(GegenbauerError::InvalidOrder);
    }
    let mu0 = monomial_moment(0, p)?.to_f64();
    let lambda = (p as f64 - 2.0) / 2.0;
    let n = order;
    // sqrt_beta[j] couples p̂_j and p̂_{j+1}
    let sqrt_beta: Vec<f64> = (1..=n).map(|j| beta(j, lambda).sqrt()).collect();
    let fail = |reason: String| GegenbauerError::QuadratureFailure { order, p, reason };

    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for j in 0..n.saturating_sub(1) {
        jacobi[(j, j + 1)] = sqrt_beta[j];
        jacobi[(j + 1, j)] = sqrt_beta[j];
    }
    let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));

    let mut weights = Vec::with_capacity(n);
    for t in nodes.iter_mut() {
        let mut converged = false;
        for _ in 0..50 {
            let (vals, d) = orthonormal(*t, n, &sqrt_beta, mu0);
            if d == 0.0 || !d.is_finite() {
                return Err(fail(format!("vanishing derivative near t = {t}")));
            }
            let step = vals[n] / d;
            *t -= step;
            if step.abs() <= 4.0 * f64::EPSILON * t.abs().max(1e-3) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(fail(format!("Newton did not converge near t = {t}")));
        }
        if t.is_nan() || t.abs() >= 1.0 {
            return Err(fail(format!("node {t} left (-1, 1)")));
        }
        let (vals, _) = orthonormal(*t, n, &sqrt_beta, mu0);
        let s: f64 = vals[..n].iter().map(|v| v * v).sum();
        weights.push(1.0 / s);
    }
    for w in nodes.windows(2) {
        if w[1] <= w[0] {
            return Err(fail("nodes collapsed during refinement".into()));
        }
    }
    Ok(QuadratureRule { p, nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_legendre() {
        let r = gauss_jacobi_rule(1, 3).unwrap();
        assert_eq!(r.order(), 1);
        assert!(r.nodes()[0].abs() < 1e-15);
        assert!((r.weights()[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn examples() {
        let r = gauss_jacobi_rule(16, 3).unwrap();
        let v = r.integrate(|t| t.powi(30));
        assert!((v - 2.0 / 31.0).abs() < 1e-12 * 2.0 / 31.0);
        let r = gauss_jacobi_rule(16, 4).unwrap();
        let v = r.integrate(|t| t * t);
        let pi8 = std::f64::consts::PI / 8.0;
        assert!((v - pi8).abs() < 1e-12 * pi8);
        assert!(matches!(gauss_jacobi_rule(0, 3), Err(GegenbauerError::InvalidOrder)));
        assert!(gauss_jacobi_rule(4, 2).is_err());
    }

    #[test]
    fn reproduces_moments() {
        for p in [3usize, 4, 5, 6, 7, 9] {
            for order in [1usize, 2, 3, 5, 8, 16, 32, 64] {
                let r = gauss_jacobi_rule(order, p).unwrap();
                assert!(r.weights().iter().all(|&w| w > 0.0));
                for n in 0..(2 * order as u32) {
                    let exact = monomial_moment(n, p).unwrap().to_f64();
                    let approx = r.integrate(|t| t.powi(n as i32));
                    let scale = exact.abs().max(1e-300);
                    if n % 2 == 1 {
                        assert!(approx.abs() < 1e-13, "odd n={n} order={order} p={p}");
                    } else {
                        assert!((approx - exact).abs() <= 1e-12 * scale, "n={n} order={order} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn large_orders_build() {
        for order in [128usize, 256, 512] {
            let r = gauss_jacobi_rule(order, 4).unwrap();
            let total: f64 = r.weights().iter().sum();
            let mu0 = std::f64::consts::PI / 2.0;
            assert!((total - mu0).abs() < 1e-12 * mu0);
        }
    }
}
