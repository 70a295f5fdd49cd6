use proptest::prelude::*;

use ffh::clifford::{Blade, Multivector};
use ffh::polyalg::{parse_poly, CartesianPoly, Layout, PolyTermJson};
use ffh::scalar::rat;
use ffh::transform::{parse_holomorphic, ExactSeed, GaussianRational};

fn arb_seed() -> impl Strategy<Value = ExactSeed> {
    prop::collection::vec((0u32..12, -20i64..21, 1i64..7, -20i64..21, 1i64..7), 0..6).prop_map(|terms| {
        let mut s = ExactSeed::zero();
        for (n, a, b, c, d) in terms {
            s.add_term(n, GaussianRational::new(rat(a, b), rat(c, d)));
        }
        s
    })
}

fn arb_layout() -> impl Strategy<Value = Layout> {
    prop_oneof![
        (1usize..5, 0usize..4).prop_map(|(p, q)| Layout::biaxial(p, q)),
        (1usize..5).prop_map(Layout::axial),
    ]
}

fn arb_poly() -> impl Strategy<Value = CartesianPoly> {
    arb_layout().prop_flat_map(|layout| {
        let nv = layout.nvars();
        let dim = layout.dim();
        prop::collection::vec(
            (
                prop::collection::vec(0u32..4, nv),
                prop::collection::vec((0u32..(1 << dim), -9i64..10, 1i64..5), 1..4),
            ),
            0..5,
        )
        .prop_map(move |terms| {
            let mut p = CartesianPoly::zero(layout);
            for (exps, coefs) in terms {
                let mut mv = Multivector::zero(dim);
                for (mask, n, d) in coefs {
                    mv.add_term(Blade::from_mask(mask), rat(n, d));
                }
                p = &p + &CartesianPoly::monomial(layout, exps, mv);
            }
            p
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn seed_text_round_trip(s in arb_seed()) {
        prop_assert_eq!(parse_holomorphic(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn poly_text_round_trip(p in arb_poly()) {
        prop_assert_eq!(parse_poly(&p.to_string(), p.layout()).unwrap(), p);
    }

    #[test]
    fn poly_json_round_trip(p in arb_poly()) {
        let json = serde_json::to_string(&p.to_json_terms()).unwrap();
        let terms: Vec<PolyTermJson> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(CartesianPoly::from_json_terms(p.layout(), &terms).unwrap(), p);
    }

    #[test]
    fn seed_parse_ignores_whitespace(s in arb_seed()) {
        let spaced: String = s.to_string().chars().flat_map(|c| [c, ' ']).collect();
        prop_assert_eq!(parse_holomorphic(&spaced).unwrap(), s);
    }
}
