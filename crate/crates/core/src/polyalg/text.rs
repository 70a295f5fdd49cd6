//! Text and JSON forms of [`CartesianPoly`].
//!
//! Grammar: `['+'|'-'] term (('+'|'-') term)*`, `term = factor ('*' factor)*`,
//! `factor = rational | var ['^' int] | blade`, with `var` one of `x0`,
//! `x<j>`, `y<j>` and `blade` written `e12` (or `e{10,11}`). Blade factors
//! multiply on the right in the order written.

use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{CartesianPoly, Layout, Monomial, PolyError, Var};
use crate::clifford::{Blade, BladeTermJson, Multivector};
use crate::scalar::{format_rational, latex_rational, Rational};
use crate::text::Cursor;

pub fn parse_poly(text: &str, layout: Layout) -> Result<CartesianPoly, PolyError> {
    let mut cur = Cursor::new(text);
    let mut out = CartesianPoly::zero(layout);
    if cur.at_end() {
        return Err(syntax(cur.pos(), "empty polynomial"));
    }
    let mut first = true;
    loop {
        let negative = if cur.eat('-') {
            true
        } else {
            if !cur.eat('+') && !first {
                return Err(syntax(cur.pos(), "expected '+' or '-'"));
            }
            false
        };
        first = false;
        let term = parse_term(&mut cur, layout)?;
        out = if negative { &out - &term } else { &out + &term };
        if cur.at_end() {
            return Ok(out);
        }
    }
}

fn syntax(pos: usize, msg: &str) -> PolyError {
    PolyError::Syntax {
        pos,
        msg: msg.to_string(),
    }
}

fn parse_term(cur: &mut Cursor<'_>, layout: Layout) -> Result<CartesianPoly, PolyError> {
    let dim = layout.dim();
    let mut exps = vec![0u32; layout.nvars()];
    let mut coeff = Multivector::one(dim);
    loop {
        let pos = cur.pos();
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let q = cur
                    .rational()
                    .expect("digit present")
                    .map_err(|p| syntax(p, "bad denominator"))?;
                coeff = coeff.scale(&q);
            }
            Some('x') | Some('y') => {
                let kind = cur.bump().expect("peeked");
                let idx: usize = cur
                    .digits()
                    .ok_or_else(|| syntax(cur.pos(), "expected variable index"))?
                    .parse()
                    .map_err(|_| syntax(pos, "variable index too large"))?;
                let var = match (kind, idx) {
                    ('x', 0) => Var::Axis,
                    ('x', j) => Var::X(j),
                    (_, j) => Var::Y(j),
                };
                let slot = layout.index(var).ok_or_else(|| PolyError::UnknownVariable {
                    var: var.to_string(),
                    layout,
                })?;
                let mut power = 1u32;
                if cur.eat('^') {
                    let p = cur.pos();
                    if cur.peek() == Some('-') {
                        return Err(syntax(p, "negative exponent"));
                    }
                    power = cur
                        .digits()
                        .ok_or_else(|| syntax(p, "expected exponent"))?
                        .parse()
                        .map_err(|_| syntax(p, "exponent too large"))?;
                }
                exps[slot] += power;
            }
            Some('e') => {
                cur.bump();
                let indices = blade_indices(cur)?;
                let blade = Blade::new(&indices, dim)?;
                coeff = &coeff * &Multivector::from_blade(dim, blade, Rational::one());
            }
            _ => return Err(syntax(pos, "expected number, variable or blade")),
        }
        if !cur.eat('*') {
            break;
        }
    }
    match cur.peek() {
        None | Some('+') | Some('-') => Ok(CartesianPoly::monomial(layout, exps, coeff)),
        Some(_) => Err(syntax(cur.pos(), "unexpected character")),
    }
}

fn blade_indices(cur: &mut Cursor<'_>) -> Result<Vec<usize>, PolyError> {
    let pos = cur.pos();
    if cur.eat('{') {
        let mut idx = Vec::new();
        loop {
            let d = cur.digits().ok_or_else(|| syntax(cur.pos(), "expected blade index"))?;
            idx.push(d.parse().map_err(|_| syntax(pos, "blade index too large"))?);
            if cur.eat('}') {
                return Ok(idx);
            }
            if !cur.eat(',') {
                return Err(syntax(cur.pos(), "expected ',' or '}'"));
            }
        }
    }
    let d = cur.digits().ok_or_else(|| syntax(pos, "expected blade indices"))?;
    Ok(d.chars().map(|c| c.to_digit(10).expect("digit") as usize).collect())
}

/// Canonical text: monomials in [`Monomial`] order, blades in canonical
/// order within a monomial.
impl fmt::Display for CartesianPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let vars = monomial_factors(self.layout, m);
            for (b, coef) in c.terms() {
                let neg = coef.is_negative();
                let mag = coef.abs();
                match (first, neg) {
                    (true, true) => write!(f, "-")?,
                    (true, false) => {}
                    (false, true) => write!(f, " - ")?,
                    (false, false) => write!(f, " + ")?,
                }
                first = false;
                let mut factors = Vec::new();
                if !mag.is_one() || (vars.is_empty() && b == Blade::SCALAR) {
                    factors.push(format_rational(&mag));
                }
                factors.extend(vars.iter().cloned());
                if b != Blade::SCALAR {
                    factors.push(b.to_string());
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

fn monomial_factors(layout: Layout, m: &Monomial) -> Vec<String> {
    m.0.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let v = layout.var_at(i);
            if e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect()
}

/// JSON term: `{"exps":[...],"coef":[{"blade":[..],"coef":"a/b"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub exps: Vec<u32>,
    pub coef: Vec<BladeTermJson>,
}

impl CartesianPoly {
    pub fn to_json_terms(&self) -> Vec<PolyTermJson> {
        self.terms
            .iter()
            .map(|(m, c)| PolyTermJson {
                exps: m.0.clone(),
                coef: c.to_json_terms(),
            })
            .collect()
    }

    pub fn from_json_terms(layout: Layout, terms: &[PolyTermJson]) -> Result<Self, PolyError> {
        let mut out = CartesianPoly::zero(layout);
        for t in terms {
            if t.exps.len() != layout.nvars() {
                return Err(syntax(0, "exponent vector length does not match layout"));
            }
            let coeff = Multivector::from_json_terms(layout.dim(), &t.coef)?;
            out.add_term(Monomial(t.exps.clone()), coeff);
        }
        Ok(out)
    }

    /// LaTeX with `x_{1}^{2}`-style variables and `e_{12}` blades.
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut pieces = Vec::new();
        for (m, c) in &self.terms {
            let vars: String = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let (name, j) = match self.layout.var_at(i) {
                        Var::Axis => ("x", 0),
                        Var::X(j) => ("x", j),
                        Var::Y(j) => ("y", j),
                    };
                    if e == 1 {
                        format!("{name}_{{{j}}}")
                    } else {
                        format!("{name}_{{{j}}}^{{{e}}}")
                    }
                })
                .collect();
            for (b, coef) in c.terms() {
                let mag = coef.abs();
                let blade = if b == Blade::SCALAR {
                    String::new()
                } else {
                    format!("e_{{{}}}", b.to_string().trim_start_matches('e'))
                };
                let mut body = String::new();
                if !mag.is_one() || (vars.is_empty() && blade.is_empty()) {
                    body.push_str(&latex_rational(&mag));
                }
                body.push_str(&vars);
                body.push_str(&blade);
                pieces.push((coef.is_negative(), body));
            }
        }
        join_signed(&pieces)
    }
}

/// Joins `(negative, magnitude)` pieces as `a - b + c`.
pub(crate) fn join_signed(pieces: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in pieces.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}
