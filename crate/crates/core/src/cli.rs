//! Command-line front end. [`run`] parses arguments, executes one command and
//! returns the exit code with the text it produced, so it can be driven
//! directly from tests.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::catalog::{self, ExampleOutcome};
use crate::gegenbauer::{funk_hecke_oracle, moment, GegenbauerError};
use crate::polyalg::{builtin_monogenic, parse_poly, validate_spherical_monogenic, Block, Layout, SphericalMonogenic};
use crate::radial::{BiaxialParams, LaurentBi, ScalarExt};
use crate::transform::{
    biaxial_transform, biaxial_transform_numeric, classify_power, numeric_dirac_residual, parse_holomorphic,
    verify_monogenic, NumericOptions, NumericSeed, NumericValue, TransformError, TransformRequest, TransformResult,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ffh", version, about = "Biaxial monogenic functions from holomorphic seeds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute Ft_{p,q}[h, P_k, P_l]
    Transform(TransformArgs),
    /// Compute the transform and check that it is monogenic
    Verify(TransformArgs),
    /// Reproduce the five worked examples
    PaperExamples(FormatArg),
    /// Table of Gegenbauer moments
    Moments(MomentArgs),
    /// Predicted shape of the transform of z^n
    Classify(ClassifyArgs),
    /// Compare both sides of the Funk-Hecke formula on S^2
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Latex,
}

#[derive(Debug, Args)]
pub struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// Holomorphic seed, e.g. "i*z^4" or "z^4 - 2*z^2"; "1/(1+z^2)" is
    /// available on the numeric path
    #[arg(long = "h", allow_hyphen_values = true)]
    pub h: String,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    /// Spherical monogenic in x1..xp (blades e1..ep)
    #[arg(long = "Pk", allow_hyphen_values = true)]
    pub pk: Option<String>,
    /// Spherical monogenic in y1..yq (blades e{p+1}..e{p+q})
    #[arg(long = "Pl", allow_hyphen_values = true)]
    pub pl: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Evaluate by quadrature and finite differences at --at
    #[arg(long)]
    pub numeric: bool,
    /// Evaluation point "r,rho" for --numeric
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub at: Option<(f64, f64)>,
    /// Numeric tolerance: Richardson flag threshold for `transform`,
    /// Dirac residual bound for `verify`
    #[arg(long)]
    pub tol: Option<f64>,
    /// Print the raw theorem value instead of the normalized one
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Args)]
pub struct MomentArgs {
    #[arg(long)]
    pub p: usize,
    /// Single power; otherwise 0..=n-max
    #[arg(long)]
    pub n: Option<u32>,
    /// Single degree; otherwise 0..=k-max
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, default_value_t = 8)]
    pub n_max: u32,
    #[arg(long, default_value_t = 4)]
    pub k_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleFn {
    One,
    T,
    T2,
    Exp,
    Cos3,
}

impl OracleFn {
    fn eval(self, t: f64) -> f64 {
        match self {
            OracleFn::One => 1.0,
            OracleFn::T => t,
            OracleFn::T2 => t * t,
            OracleFn::Exp => t.exp(),
            OracleFn::Cos3 => (3.0 * t).cos(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            OracleFn::One => "one",
            OracleFn::T => "t",
            OracleFn::T2 => "t2",
            OracleFn::Exp => "exp",
            OracleFn::Cos3 => "cos3",
        }
    }
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Degree of Y_k = (x1 - x2 e12)^k
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    /// Profile F; all five when omitted
    #[arg(long, value_enum)]
    pub f: Option<OracleFn>,
    /// Unit vector "a,b,c"
    #[arg(long, value_parser = parse_triple, default_value = "0,0,1", allow_hyphen_values = true)]
    pub xi: [f64; 3],
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

fn parse_floats(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}")))
        .collect::<Result<_, _>>()?;
    if parts.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {}", parts.len()));
    }
    Ok(parts)
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let v = parse_floats(s, 2)?;
    Ok((v[0], v[1]))
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let v = parse_floats(s, 3)?;
    Ok([v[0], v[1], v[2]])
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Gegenbauer(#[from] GegenbauerError),
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome::with_code(EXIT_OK, stdout)
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Transform(a) if a.numeric => numeric_transform(a),
        Command::Transform(a) => exact_transform(a),
        Command::Verify(a) if a.numeric => numeric_verify(a),
        Command::Verify(a) => exact_verify(a),
        Command::PaperExamples(f) => paper_examples(f.format),
        Command::Moments(a) => moments(a),
        Command::Classify(a) => classify(a),
        Command::Oracle(a) => oracle(a),
    }
}

fn to_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize") + "\n"
}

fn scalar_json(s: &ScalarExt) -> Value {
    json!({ "rat": crate::scalar::format_rational(s.rat()), "pi_pow": s.pi_pow() })
}

fn laurent_json(f: &LaurentBi) -> Value {
    let (v1, v2) = f.vars().names();
    let terms: Vec<Value> = f
        .rational_terms()
        .map(|(&(a, b), c)| json!({ "exp": [a, b], "coef": crate::scalar::format_rational(c) }))
        .collect();
    json!({ "vars": [v1, v2], "pi_pow": f.pi_pow(), "terms": terms })
}

fn params_json(p: BiaxialParams) -> Value {
    json!({ "p": p.p, "q": p.q, "k": p.k, "l": p.l })
}

fn monogenic(
    text: Option<&str>,
    block: Block,
    p: usize,
    q: usize,
    degree: u32,
) -> Result<SphericalMonogenic, CliError> {
    let dim = if block == Block::X { p } else { q };
    match text {
        None => Ok(builtin_monogenic(block, dim, degree).map_err(TransformError::from)?),
        Some(t) => {
            let f = parse_poly(t, Layout::biaxial(p, q)).map_err(TransformError::from)?;
            Ok(validate_spherical_monogenic(&f, block, degree).map_err(TransformError::from)?)
        }
    }
}

fn request(a: &TransformArgs) -> Result<TransformRequest, CliError> {
    let seed = parse_holomorphic(&a.h)?;
    let pk = monogenic(a.pk.as_deref(), Block::X, a.p, a.q, a.k)?;
    let pl = monogenic(a.pl.as_deref(), Block::Y, a.p, a.q, a.l)?;
    Ok(TransformRequest::new(seed, a.p, a.q, pk, pl)?)
}

fn numeric_seed(text: &str) -> Result<NumericSeed, CliError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let known = NumericSeed::inverse_one_plus_z2();
    if compact == known.label() {
        return Ok(known);
    }
    Ok(parse_holomorphic(text)?.to_numeric())
}

fn label(a: &TransformArgs) -> String {
    format!("Ft_{{{},{}}}[{}, P_{}, P_{}]", a.p, a.q, a.h.trim(), a.k, a.l)
}

fn computed(a: &TransformArgs) -> Result<(TransformResult, TransformResult), CliError> {
    let raw = biaxial_transform(&request(a)?)?;
    let shown = if a.raw { raw.clone() } else { raw.normalize()? };
    Ok((raw, shown))
}

fn cartesian_text(res: &TransformResult, latex: bool) -> Option<String> {
    let c = res.cartesian.as_ref()?;
    let body = if latex { c.poly.to_latex() } else { c.poly.to_string() };
    Some(match (c.pi_pow, latex) {
        (0, _) => body,
        (1, true) => format!("\\pi\\left({body}\\right)"),
        (s, true) => format!("\\pi^{{{s}}}\\left({body}\\right)"),
        (1, false) => format!("pi*({body})"),
        (s, false) => format!("pi^{s}*({body})"),
    })
}

fn result_json(a: &TransformArgs, res: &TransformResult) -> Value {
    let cartesian = match &res.cartesian {
        Some(c) => json!({ "pi_pow": c.pi_pow, "terms": c.poly.to_json_terms() }),
        None => Value::Null,
    };
    json!({
        "seed": res.request.seed.to_string(),
        "params": params_json(res.request.params),
        "raw": a.raw,
        "classification": res.classification.to_string(),
        "normalization": scalar_json(&res.normalization),
        "M": laurent_json(res.m()),
        "N": laurent_json(res.n()),
        "cartesian": cartesian,
    })
}

fn exact_transform(a: &TransformArgs) -> Result<Outcome, CliError> {
    let (_, res) = computed(a)?;
    let mut out = String::new();
    match a.format {
        Format::Json => out = to_json(&result_json(a, &res)),
        Format::Latex => {
            let params = res.request.params;
            let _ = writeln!(
                out,
                "\\mathsf{{Ft}}_{{{},{}}}(\\underline x,\\underline y) = \\left({}\\right)P_{{{}}}(\\underline x)P_{{{}}}(\\underline y)",
                params.p,
                params.q,
                res.radial.to_latex(),
                params.k,
                params.l
            );
            if let Some(c) = cartesian_text(&res, true) {
                let _ = writeln!(out, "{c}");
            }
            let meta = json!({
                "classification": res.classification.to_string(),
                "normalization": scalar_json(&res.normalization),
                "params": params_json(params),
                "raw": a.raw,
            });
            out.push_str(&to_json(&meta));
        }
        Format::Plain => {
            let _ = writeln!(out, "{}", label(a));
            let _ = writeln!(out, "classification: {}", res.classification);
            let _ = writeln!(out, "normalization: {}", res.normalization);
            let _ = writeln!(out, "M = {}", res.m());
            let _ = writeln!(out, "N = {}", res.n());
            match cartesian_text(&res, false) {
                Some(c) => {
                    let _ = writeln!(out, "cartesian = {c}");
                }
                None => out.push_str("cartesian: none (negative powers of r or rho)\n"),
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn exact_verify(a: &TransformArgs) -> Result<Outcome, CliError> {
    let (raw, _) = computed(a)?;
    let report = verify_monogenic(&raw)?;
    let passed = report.passed();
    let out = match a.format {
        Format::Json => to_json(&json!({
            "seed": raw.request.seed.to_string(),
            "params": params_json(raw.request.params),
            "passed": passed,
            "dirac_zero": report.dirac_zero,
            "vekua_zero": report.vekua_zero(),
            "vekua": [laurent_json(&report.vekua.0), laurent_json(&report.vekua.1)],
            "shape_ok": report.shape_ok,
        })),
        _ => {
            let dirac = match report.dirac_zero {
                Some(true) => "0",
                Some(false) => "nonzero",
                None => "n/a (not polynomial)",
            };
            format!(
                "{}\n{} dirac: {}; vekua: ({}, {}); sectors: {}\n",
                label(a),
                if passed { "PASS" } else { "FAIL" },
                dirac,
                report.vekua.0,
                report.vekua.1,
                if report.shape_ok { "ok" } else { "unexpected omega or nu part" }
            )
        }
    };
    Ok(Outcome::with_code(if passed { EXIT_OK } else { EXIT_FAILED }, out))
}

fn numeric_opts(tol: Option<f64>) -> NumericOptions {
    let mut opts = NumericOptions::from_env();
    if let Some(t) = tol {
        opts.tol = t;
    }
    opts
}

fn require_point(a: &TransformArgs) -> Result<(f64, f64), CliError> {
    a.at.ok_or_else(|| CliError::Usage("--numeric needs --at r,rho".into()))
}

fn numeric_json(a: &TransformArgs, seed: &NumericSeed, at: (f64, f64), v: &NumericValue) -> Value {
    json!({
        "seed": seed.label(),
        "params": params_json(BiaxialParams::new(a.p, a.q, a.k, a.l)),
        "at": [at.0, at.1],
        "M": v.m,
        "N": v.n,
        "quad_order": v.quad_order,
        "step": [v.step.0, v.step.1],
        "richardson_rel": v.richardson_rel,
        "flagged": v.flagged,
    })
}

fn numeric_transform(a: &TransformArgs) -> Result<Outcome, CliError> {
    let seed = numeric_seed(&a.h)?;
    let at = require_point(a)?;
    let params = BiaxialParams::new(a.p, a.q, a.k, a.l);
    let v = biaxial_transform_numeric(&seed, params, at, &numeric_opts(a.tol))?;
    let out = match a.format {
        Format::Json => to_json(&numeric_json(a, &seed, at, &v)),
        _ => format!(
            "{}\nat (r, rho) = ({}, {})\nM = {:.15e}\nN = {:.15e}\nquadrature order {}, step ({:e}, {:e}), richardson {:.3e}{}\n",
            label(a),
            at.0,
            at.1,
            v.m,
            v.n,
            v.quad_order,
            v.step.0,
            v.step.1,
            v.richardson_rel,
            if v.flagged { " (flagged)" } else { "" }
        ),
    };
    Ok(Outcome::ok(out))
}

/// Cartesian point with `|x| = r`, `|y| = ρ` off the coordinate axes.
fn sample_point(p: usize, q: usize, r: f64, rho: f64) -> Vec<f64> {
    let spread = |n: usize, len: f64| -> Vec<f64> {
        let raw: Vec<f64> = (0..n).map(|j| if j % 2 == 0 { 1.0 + j as f64 } else { -(1.0 + j as f64) / 2.0 }).collect();
        let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
        raw.iter().map(|v| v * len / norm).collect()
    };
    let mut pt = spread(p, r);
    pt.extend(spread(q, rho));
    pt
}

fn numeric_verify(a: &TransformArgs) -> Result<Outcome, CliError> {
    let seed = numeric_seed(&a.h)?;
    let at = require_point(a)?;
    if a.p < 3 {
        return Err(TransformError::DimensionTooSmall(a.p).into());
    }
    let pk = monogenic(a.pk.as_deref(), Block::X, a.p, a.q, a.k)?;
    let pl = monogenic(a.pl.as_deref(), Block::Y, a.p, a.q, a.l)?;
    let tol = a.tol.unwrap_or(1e-5);
    let point = sample_point(a.p, a.q, at.0, at.1);
    let res = numeric_dirac_residual(&seed, &pk, &pl, &point, &NumericOptions::from_env())?;
    let passed = res.relative() <= tol;
    let out = match a.format {
        Format::Json => to_json(&json!({
            "seed": seed.label(),
            "params": params_json(BiaxialParams::new(a.p, a.q, a.k, a.l)),
            "point": point,
            "residual": res.abs,
            "field_norm": res.field_norm,
            "relative": res.relative(),
            "tol": tol,
            "passed": passed,
        })),
        _ => format!(
            "{}\n{} dirac residual {:.3e} (field {:.3e}, relative {:.3e}, tol {:e})\n",
            label(a),
            if passed { "PASS" } else { "FAIL" },
            res.abs,
            res.field_norm,
            res.relative(),
            tol
        ),
    };
    Ok(Outcome::with_code(if passed { EXIT_OK } else { EXIT_FAILED }, out))
}

fn paper_examples(format: Format) -> Result<Outcome, CliError> {
    let outcomes: Vec<ExampleOutcome> = catalog::run_examples(&NumericOptions::from_env());
    let all = outcomes.iter().all(|o| o.passed);
    let out = match format {
        Format::Json => to_json(&json!({ "passed": all, "examples": outcomes })),
        _ => {
            let mut s = String::new();
            for o in &outcomes {
                let _ = writeln!(s, "{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.label, o.detail);
            }
            s
        }
    };
    Ok(Outcome::with_code(if all { EXIT_OK } else { EXIT_FAILED }, out))
}

fn moments(a: &MomentArgs) -> Result<Outcome, CliError> {
    let ns: Vec<u32> = a.n.map_or_else(|| (0..=a.n_max).collect(), |n| vec![n]);
    let ks: Vec<u32> = a.k.map_or_else(|| (0..=a.k_max).collect(), |k| vec![k]);
    let mut rows = Vec::new();
    for &n in &ns {
        for &k in &ks {
            rows.push((n, k, moment(n, k, a.p)?));
        }
    }
    let row_json = |(n, k, m): &(u32, u32, ScalarExt)| {
        json!({ "n": n, "k": k, "p": a.p, "rat": crate::scalar::format_rational(m.rat()), "pi_pow": m.pi_pow() })
    };
    let out = match a.format {
        Format::Json if rows.len() == 1 => to_json(&row_json(&rows[0])),
        Format::Json => to_json(&Value::Array(rows.iter().map(row_json).collect())),
        Format::Latex => {
            let mut s = String::new();
            for (n, k, m) in &rows {
                let pi = match m.pi_pow() {
                    0 => String::new(),
                    1 => "\\pi".into(),
                    e => format!("\\pi^{{{e}}}"),
                };
                let _ = writeln!(s, "m_{{{n},{k}}}^{{({})}} = {}{pi}", a.p, crate::scalar::latex_rational(m.rat()));
            }
            s
        }
        Format::Plain => {
            let mut s = String::from("n\tk\tp\tmoment\n");
            for (n, k, m) in &rows {
                let _ = writeln!(s, "{n}\t{k}\t{}\t{m}", a.p);
            }
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn classify(a: &ClassifyArgs) -> Result<Outcome, CliError> {
    let c = classify_power(a.n, a.k, a.l, a.p, a.q)?;
    let out = match a.format {
        Format::Json => to_json(&json!({
            "n": a.n, "k": a.k, "l": a.l, "p": a.p, "q": a.q,
            "classification": c.to_string(),
        })),
        _ => format!("{c}\n"),
    };
    Ok(Outcome::ok(out))
}

fn oracle(a: &OracleArgs) -> Result<Outcome, CliError> {
    let yk = builtin_monogenic(Block::X, 3, a.k).map_err(TransformError::from)?;
    let fs: Vec<OracleFn> = match a.f {
        Some(f) => vec![f],
        None => OracleFn::value_variants().to_vec(),
    };
    let mut rows = Vec::new();
    for f in fs {
        let cmp = funk_hecke_oracle(|t| f.eval(t), yk.local(), a.xi)?;
        rows.push((f, cmp.lhs.max_norm(), cmp.rhs.max_norm(), cmp.relative_diff()));
    }
    let passed = rows.iter().all(|r| r.3 <= a.tol);
    let out = match a.format {
        Format::Json => to_json(&json!({
            "k": a.k,
            "xi": a.xi,
            "tol": a.tol,
            "passed": passed,
            "rows": rows.iter().map(|(f, l, r, d)| json!({ "f": f.name(), "lhs": l, "rhs": r, "relative_diff": d })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = String::new();
            for (f, l, r, d) in &rows {
                let _ = writeln!(
                    s,
                    "{} F={} |lhs|={:.12e} |rhs|={:.12e} rel={:.3e}",
                    if *d <= a.tol { "PASS" } else { "FAIL" },
                    f.name(),
                    l,
                    r,
                    d
                );
            }
            s
        }
    };
    Ok(Outcome::with_code(if passed { EXIT_OK } else { EXIT_FAILED }, out))
}
