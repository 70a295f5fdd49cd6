//! The worked examples of the biaxial transform with their published closed
//! forms, and the checks that compare them against computed results.

use serde::Serialize;

use crate::radial::{BiaxialParams, LaurentBi, RadialElement, RadialVars, Sector};
use crate::scalar::{int, rat, Rational};
use crate::transform::{
    biaxial_transform, biaxial_transform_numeric, parse_holomorphic, NumericOptions, NumericSeed, TransformError,
    TransformRequest, TransformResult,
};

/// An example with polynomial-seed input and a closed form for `M` and `N`.
#[derive(Debug, Clone)]
pub struct ExactExample {
    pub label: &'static str,
    pub seed: &'static str,
    pub params: BiaxialParams,
    /// Published `M`, up to a global scalar.
    pub m: LaurentBi,
    /// Published `N`, same scalar.
    pub n: LaurentBi,
}

fn rr(terms: &[((i32, i32), Rational)]) -> LaurentBi {
    LaurentBi::from_terms(RadialVars::RRho, 0, terms.iter().cloned())
}

pub fn exact_examples() -> Vec<ExactExample> {
    vec![
        ExactExample {
            label: "Ft_{3,3}[iz,1,1]",
            seed: "i*z",
            params: BiaxialParams::new(3, 3, 0, 0),
            m: rr(&[((0, -1), int(1))]),
            n: rr(&[((1, -2), rat(-1, 3))]),
        },
        ExactExample {
            label: "Ft_{4,3}[iz^4,P_1,1]",
            seed: "i*z^4",
            params: BiaxialParams::new(4, 3, 1, 0),
            m: rr(&[((2, -1), int(1)), ((0, 1), int(-6))]),
            n: rr(&[((3, -2), rat(-1, 8)), ((1, 0), int(-1))]),
        },
        ExactExample {
            label: "Ft_{3,3}[z^4,1,1]",
            seed: "z^4",
            params: BiaxialParams::new(3, 3, 0, 0),
            m: rr(&[((0, 2), int(1)), ((2, 0), int(-1))]),
            n: rr(&[((1, 1), rat(2, 3))]),
        },
        ExactExample {
            label: "Ft_{3,3}[z^7,P_1,1]",
            seed: "z^7",
            params: BiaxialParams::new(3, 3, 1, 0),
            m: rr(&[((4, 0), int(3)), ((2, 2), int(-14)), ((0, 4), int(7))]),
            n: rr(&[((3, 1), int(-4)), ((1, 3), rat(28, 5))]),
        },
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct ExampleOutcome {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

/// The computed result and the published form, both normalized.
pub struct ExactComparison {
    pub computed: TransformResult,
    pub expected: RadialElement,
}

impl ExactComparison {
    pub fn matches(&self) -> bool {
        self.computed.radial == self.expected
    }
}

pub fn compare_exact(ex: &ExactExample) -> Result<ExactComparison, TransformError> {
    let req = TransformRequest::builtin(parse_holomorphic(ex.seed)?, ex.params)?;
    let raw = biaxial_transform(&req)?;
    let published = TransformResult {
        radial: RadialElement::biaxial(ex.params)
            .with_sector(Sector::One, ex.m.clone())?
            .with_sector(Sector::OmegaNu, ex.n.clone())?,
        cartesian: None,
        ..raw.clone()
    };
    Ok(ExactComparison {
        computed: raw.normalize()?,
        expected: published.normalize()?.radial,
    })
}

/// Published closed form of `Ft_{3,3}[1/(1+z²),1,1]` as `(M, N)`.
pub fn arctan_closed_form(r: f64, rho: f64) -> (f64, f64) {
    let d = (r * r + (rho + 1.0).powi(2)) * (r * r + (rho - 1.0).powi(2));
    let m = 4.0 / d;
    let atan = (r / (rho + 1.0)).atan() + (r / (rho - 1.0)).atan();
    let n = -(2.0 * (r * r - rho * rho + 1.0) / (r * rho * d) + atan / (r * r * rho * rho));
    (m, n)
}

/// The comparison grid: 5 values of `r` in `[0.2, 2]` by 4 of `ρ` in `[1.2, 3]`.
pub fn arctan_grid() -> Vec<(f64, f64)> {
    let mut pts = Vec::with_capacity(20);
    for i in 0..5 {
        for j in 0..4 {
            pts.push((0.2 + 0.45 * f64::from(i), 1.2 + 0.6 * f64::from(j)));
        }
    }
    pts
}

#[derive(Debug, Clone, Serialize)]
pub struct ArctanCheck {
    /// Least-squares factor taking the closed form to the computed values.
    pub scale: f64,
    /// Worst error after scaling, relative to the larger sector at each point.
    pub max_rel: f64,
    pub points: usize,
    pub flagged: usize,
}

pub fn check_arctan(opts: &NumericOptions) -> Result<ArctanCheck, TransformError> {
    let seed = NumericSeed::inverse_one_plus_z2();
    let params = BiaxialParams::new(3, 3, 0, 0);
    let grid = arctan_grid();
    let mut rows = Vec::with_capacity(grid.len());
    let mut flagged = 0;
    for &(r, rho) in &grid {
        let v = biaxial_transform_numeric(&seed, params, (r, rho), opts)?;
        flagged += usize::from(v.flagged);
        rows.push(((v.m, v.n), arctan_closed_form(r, rho)));
    }
    let (num, den) = rows.iter().fold((0.0, 0.0), |(a, b), ((m, n), (pm, pn))| {
        (a + m * pm + n * pn, b + pm * pm + pn * pn)
    });
    let scale = num / den;
    let max_rel = rows
        .iter()
        .map(|((m, n), (pm, pn))| {
            let denom = (scale * pm).abs().max((scale * pn).abs());
            (m - scale * pm).abs().max((n - scale * pn).abs()) / denom
        })
        .fold(0.0, f64::max);
    Ok(ArctanCheck {
        scale,
        max_rel,
        points: grid.len(),
        flagged,
    })
}

pub const ARCTAN_TOL: f64 = 1e-6;

/// Runs all five examples in order.
pub fn run_examples(opts: &NumericOptions) -> Vec<ExampleOutcome> {
    let mut out: Vec<ExampleOutcome> = exact_examples()
        .iter()
        .map(|ex| match compare_exact(ex) {
            Ok(c) => ExampleOutcome {
                label: ex.label.to_string(),
                passed: c.matches(),
                detail: format!("normalized by {}; M = {}, N = {}", c.computed.normalization, c.computed.m(), c.computed.n()),
            },
            Err(e) => ExampleOutcome {
                label: ex.label.to_string(),
                passed: false,
                detail: e.to_string(),
            },
        })
        .collect();
    let label = "Ft_{3,3}[1/(1+z^2),1,1]".to_string();
    out.push(match check_arctan(opts) {
        Ok(c) => ExampleOutcome {
            label,
            passed: c.max_rel <= ARCTAN_TOL,
            detail: format!("scale {:.12}, max relative error {:.3e} over {} points", c.scale, c.max_rel, c.points),
        },
        Err(e) => ExampleOutcome {
            label,
            passed: false,
            detail: e.to_string(),
        },
    });
    out
}
