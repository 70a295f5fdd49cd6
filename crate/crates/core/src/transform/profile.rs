use std::collections::HashMap;

use super::{extract_uv, ExactSeed, TransformError};
use crate::gegenbauer::{gegenbauer_for_dim, moment};
use crate::radial::{LaurentBi, RadialVars, ScalarExt};
use crate::scalar::Rational;

/// The Funk-Hecke pair `(A, B)` in `(r, ρ)` for given `(p, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunkHeckeProfile {
    pub p: usize,
    pub k: u32,
    pub a: LaurentBi,
    pub b: LaurentBi,
}

/// `Σ c_{ab} θ^a ρ^b ↦ Σ c_{ab} · moment(a, j, p) / C_j(1) · r^{a−k} ρ^b`.
fn integrate(
    f: &LaurentBi,
    j: u32,
    k: u32,
    p: usize,
) -> Result<LaurentBi, TransformError> {
    let c1 = gegenbauer_for_dim(j, p)?.at_one();
    let inv = ScalarExt::rational(Rational::from_integer(1.into()) / c1);
    let mut moments: HashMap<i32, ScalarExt> = HashMap::new();
    let mut out = LaurentBi::zero(RadialVars::RRho);
    for (&(a, b), c) in f.rational_terms() {
        debug_assert!(a >= 0);
        let m = match moments.get(&a) {
            Some(m) => m.clone(),
            None => {
                let m = moment(a as u32, j, p)?.mul(&inv);
                moments.insert(a, m.clone());
                m
            }
        };
        if m.is_zero() {
            continue;
        }
        let term = LaurentBi::monomial(RadialVars::RRho, a - k as i32, b, m.scale(c));
        out = out.checked_add(&term)?;
    }
    Ok(out)
}

/// `A = C_k(1)^{-1} r^{-k} ∫ u(rt, ρ) C_k(t) w(t) dt` and the same for `B`
/// with `v` and `C_{k+1}`, with `w(t) = (1 − t²)^{(p−3)/2}`.
pub fn funk_hecke_profile(h: &ExactSeed, p: usize, k: u32) -> Result<FunkHeckeProfile, TransformError> {
    if p < 3 {
        return Err(TransformError::DimensionTooSmall(p));
    }
    let (u, v) = extract_uv(h);
    Ok(FunkHeckeProfile {
        p,
        k,
        a: integrate(&u, k, k, p)?,
        b: integrate(&v, k + 1, k, p)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::transform::parse_holomorphic;

    fn rr(terms: &[((i32, i32), Rational)], pi: u32) -> LaurentBi {
        LaurentBi::from_terms(RadialVars::RRho, pi, terms.iter().cloned())
    }

    #[test]
    fn examples() {
        let f = funk_hecke_profile(&parse_holomorphic("i*z").unwrap(), 3, 0).unwrap();
        assert_eq!(f.a, rr(&[((0, 1), int(-2))], 0));
        assert_eq!(f.b, rr(&[((1, 0), rat(2, 3))], 0));

        let f = funk_hecke_profile(&ExactSeed::power(4), 3, 0).unwrap();
        assert_eq!(f.a, rr(&[((4, 0), rat(2, 5)), ((2, 2), int(-4)), ((0, 4), int(2))], 0));
        assert_eq!(f.b, rr(&[((3, 1), rat(8, 5)), ((1, 3), rat(-8, 3))], 0));

        let f = funk_hecke_profile(&ExactSeed::power(3), 3, 0).unwrap();
        assert!(f.a.is_zero() && f.b.is_zero());
        assert!(funk_hecke_profile(&ExactSeed::power(3), 2, 0).is_err());
    }

    #[test]
    fn even_dimension_carries_pi() {
        let f = funk_hecke_profile(&parse_holomorphic("i*z^4").unwrap(), 4, 1).unwrap();
        assert_eq!(f.a.pi_pow(), 1);
        assert_eq!(f.b.pi_pow(), 1);
        assert!(f.a.rational_terms().all(|((a, _), _)| *a >= 0));
    }

    #[test]
    fn odd_parity_vanishes() {
        for n in 0..8u32 {
            for k in 0..4u32 {
                if (n + k) % 2 == 1 {
                    let f = funk_hecke_profile(&ExactSeed::power(n), 5, k).unwrap();
                    assert!(f.a.is_zero() && f.b.is_zero(), "n={n} k={k}");
                }
            }
        }
    }
}
