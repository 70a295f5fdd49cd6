//! Spherical monogenics: homogeneous, even-valued, Dirac-null polynomials in
//! one variable block.

use super::{Block, CartesianPoly, Degree, Layout, PolyError, Var};
use crate::clifford::{Blade, Multivector};
use crate::scalar::int;

/// Homogeneous monogenic polynomial of degree `degree` in one block.
///
/// Stored in block-local form: an x-block polynomial lives in
/// `Layout::biaxial(dim, 0)`, a y-block one in `Layout::biaxial(0, dim)`, so
/// local generators are always `e_1..e_dim`. [`SphericalMonogenic::embed`]
/// places it into a larger layout.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalMonogenic {
    block: Block,
    degree: u32,
    poly: CartesianPoly,
}

impl SphericalMonogenic {
    pub fn block(&self) -> Block {
        self.block
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Block dimension.
    pub fn dim(&self) -> usize {
        self.poly.layout().dim()
    }

    pub fn local(&self) -> &CartesianPoly {
        &self.poly
    }

    /// The polynomial expressed in `target`. x-block values need
    /// `target.p == dim`, y-block values `target.q == dim`; y-block generators
    /// shift by `target.p`.
    pub fn embed(&self, target: Layout) -> Result<CartesianPoly, PolyError> {
        let dim = self.dim();
        let local = self.poly.layout();
        let (fits, offset) = match self.block {
            Block::X => (target.p == dim, 0),
            _ => (target.q == dim, target.p),
        };
        if !fits {
            return Err(PolyError::LayoutMismatch(local, target));
        }
        let slot_map: Vec<usize> = (0..local.nvars())
            .map(|i| target.index(local.var_at(i)).expect("block variable exists in target"))
            .collect();
        Ok(self.poly.relayout(target, &slot_map, offset))
    }
}

/// Checks that `f` is a spherical monogenic of degree `k` in `block` and
/// wraps it. Checks run in the order: foreign variables, homogeneity,
/// evenness, monogenicity.
pub fn validate_spherical_monogenic(
    f: &CartesianPoly,
    block: Block,
    k: u32,
) -> Result<SphericalMonogenic, PolyError> {
    let layout = f.layout();
    if let Some(witness) = f.foreign_term(block) {
        return Err(PolyError::ForeignVariable { block, witness });
    }
    let (dim, local, offset) = match block {
        Block::X => (layout.p, Layout::biaxial(layout.p, 0), 0),
        Block::Y => (layout.q, Layout::biaxial(0, layout.q), layout.p),
        Block::Full => {
            return Err(PolyError::ForeignVariable {
                block,
                witness: "a spherical monogenic must live in the x or y block".into(),
            })
        }
    };

    for (m, c) in f.raw_terms() {
        if m.degree() != k {
            return Err(PolyError::NotHomogeneous {
                degree: k,
                witness: f.term_string(m, c),
            });
        }
    }
    for (m, c) in f.raw_terms() {
        if !c.is_even_over(offset + 1, offset + dim) {
            return Err(PolyError::NotEven {
                witness: f.term_string(m, c),
            });
        }
    }

    // strip foreign slots and shift generators down to e_1..e_dim
    let mut poly = CartesianPoly::zero(local);
    for (m, c) in f.raw_terms() {
        let exps: Vec<u32> = (0..local.nvars())
            .map(|i| m.0[layout.index(local.var_at(i)).expect("block var")])
            .collect();
        let mut coeff = Multivector::zero(dim);
        for (b, v) in c.terms() {
            coeff.add_term(Blade::from_mask(b.mask() >> offset), v.clone());
        }
        poly.add_term(super::Monomial(exps), coeff);
    }

    let d = poly.dirac(block);
    if let Some((m, c)) = d.raw_terms().iter().next() {
        return Err(PolyError::NotMonogenic {
            witness: d.term_string(m, c),
        });
    }
    debug_assert!(matches!(
        poly.homogeneous_degree(),
        Degree::Zero | Degree::Homogeneous(_)
    ));
    Ok(SphericalMonogenic {
        block,
        degree: k,
        poly,
    })
}

/// `(v_1 - v_2 e_{12})^k` in block-local generators; validated before return.
pub fn builtin_monogenic(block: Block, dim: usize, k: u32) -> Result<SphericalMonogenic, PolyError> {
    let layout = match block {
        Block::X => Layout::biaxial(dim, 0),
        Block::Y => Layout::biaxial(0, dim),
        Block::Full => {
            return Err(PolyError::ForeignVariable {
                block,
                witness: "a spherical monogenic must live in the x or y block".into(),
            })
        }
    };
    if k == 0 {
        return validate_spherical_monogenic(&CartesianPoly::one(layout), block, 0);
    }
    if dim < 2 {
        return Err(PolyError::DimensionTooSmall { dim, degree: k });
    }
    let var = |j| match block {
        Block::X => Var::X(j),
        _ => Var::Y(j),
    };
    let v1 = CartesianPoly::variable(layout, var(1))?;
    let v2 = CartesianPoly::variable(layout, var(2))?;
    let e12 = Multivector::from_blade(dim, Blade::new(&[1, 2], dim)?, int(1));
    let base = &v1 - &v2.left_mul(&e12);
    validate_spherical_monogenic(&base.pow(k), block, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    #[test]
    fn validation_examples() {
        let l = Layout::biaxial(3, 0);
        assert!(validate_spherical_monogenic(&CartesianPoly::one(l), Block::X, 0).is_ok());
        let p1 = parse_poly("x1 - x2*e12", l).unwrap();
        assert!(validate_spherical_monogenic(&p1, Block::X, 1).is_ok());
        let bad = parse_poly("x1*e1", l).unwrap();
        assert!(matches!(
            validate_spherical_monogenic(&bad, Block::X, 1),
            Err(PolyError::NotEven { .. })
        ));
    }

    #[test]
    fn rejection_reasons() {
        let l = Layout::biaxial(3, 2);
        let wrong_degree = parse_poly("x1 - x2^2", l).unwrap();
        assert!(matches!(
            validate_spherical_monogenic(&wrong_degree, Block::X, 1),
            Err(PolyError::NotHomogeneous { .. })
        ));
        let harmonic_only = parse_poly("x1*x2", l).unwrap();
        assert!(matches!(
            validate_spherical_monogenic(&harmonic_only, Block::X, 2),
            Err(PolyError::NotMonogenic { .. })
        ));
        let mixed = parse_poly("x1*y1", l).unwrap();
        assert!(matches!(
            validate_spherical_monogenic(&mixed, Block::X, 2),
            Err(PolyError::ForeignVariable { .. })
        ));
        // y-generator coefficient on an x-block polynomial
        let foreign_gen = parse_poly("e45", l).unwrap();
        assert!(matches!(
            validate_spherical_monogenic(&foreign_gen, Block::X, 0),
            Err(PolyError::NotEven { .. })
        ));
    }

    #[test]
    fn builtin_examples() {
        let l = Layout::biaxial(3, 0);
        let p0 = builtin_monogenic(Block::X, 3, 0).unwrap();
        assert_eq!(p0.local(), &CartesianPoly::one(l));
        let p1 = builtin_monogenic(Block::X, 3, 1).unwrap();
        assert_eq!(p1.local(), &parse_poly("x1 - x2*e12", l).unwrap());
        let p2 = builtin_monogenic(Block::X, 3, 2).unwrap();
        assert_eq!(p2.local(), &parse_poly("x1^2 - x2^2 - 2*x1*x2*e12", l).unwrap());
        assert!(matches!(
            builtin_monogenic(Block::X, 1, 1),
            Err(PolyError::DimensionTooSmall { .. })
        ));
        assert!(builtin_monogenic(Block::X, 1, 0).is_ok());
    }

    #[test]
    fn y_block_embedding_shifts_generators() {
        let pl = builtin_monogenic(Block::Y, 3, 1).unwrap();
        let target = Layout::biaxial(3, 3);
        let e = pl.embed(target).unwrap();
        assert_eq!(e, parse_poly("y1 - y2*e45", target).unwrap());
        assert!(e.dirac(Block::Y).is_zero());
        assert!(pl.embed(Layout::biaxial(3, 4)).is_err());
        let back = validate_spherical_monogenic(&e, Block::Y, 1).unwrap();
        assert_eq!(back, pl);
    }

    #[test]
    fn accepted_monogenics_are_harmonic() {
        for dim in 2..=5 {
            for k in 0..=4 {
                let p = builtin_monogenic(Block::X, dim, k).unwrap();
                assert!(p.local().laplacian(Block::X).is_zero());
            }
        }
    }
}
