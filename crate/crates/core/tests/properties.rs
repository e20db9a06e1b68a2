//! Property tests for the structural invariants of each layer.

use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use coamoeba::coamoeba::{triangle_area, triangle_contains_mod, SimplexCoamoeba};
use coamoeba::newton::{
    hull_cycle_2d, is_triangulation, lower_hull_subdivision, perturb_to_triangulation,
    polygon_area2, LiftedPointSet,
};
use coamoeba::puiseux::PuiseuxSeries;
use coamoeba::tropical::{balancing_check, corner_locus_2d, duality_check, TropicalPolynomial};
use coamoeba::LatticePoint;

const PI: f64 = std::f64::consts::PI;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn series_strategy() -> impl Strategy<Value = PuiseuxSeries> {
    prop::collection::vec(((-20i64..20, 1i64..6), (-4.0f64..4.0, -4.0f64..4.0)), 1..5)
        .prop_map(|terms| {
            PuiseuxSeries::new(
                terms
                    .into_iter()
                    .map(|((n, d), (re, im))| (rat(n, d), Complex64::new(re, im)))
                    .collect(),
            )
        })
        .prop_filter("nonzero series", |s| !s.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn valuation_is_additive_under_products(a in series_strategy(), b in series_strategy()) {
        let prod = a.mul(&b);
        // Float cancellation of the leading term cannot happen: leading
        // coefficients multiply.
        prop_assert!(!prod.is_zero());
        prop_assert_eq!(
            prod.valuation().unwrap(),
            a.valuation().unwrap() + b.valuation().unwrap()
        );
    }

    #[test]
    fn valuation_is_subadditive_under_sums(a in series_strategy(), b in series_strategy()) {
        let sum = a.add(&b);
        if !sum.is_zero() {
            let bound = a.valuation().unwrap().max(b.valuation().unwrap());
            prop_assert!(sum.valuation().unwrap() <= bound);
        }
    }

    #[test]
    fn w_map_modulus_matches_valuation(a in series_strategy()) {
        let w = a.w_map().unwrap();
        let expected = coamoeba::lattice::rat_to_f64(&a.valuation().unwrap()).exp();
        prop_assert!((w.norm() - expected).abs() <= 1e-12 * expected.max(1.0));
    }

    #[test]
    fn leading_argument_ignores_tails(a in series_strategy(), re in 0.5f64..2.0) {
        let arg = a.arg_map().unwrap();
        let top = a.terms().last().unwrap().exponent.clone();
        let extended = a.add(&PuiseuxSeries::monomial(top + rat(1, 1), Complex64::new(re, 0.3)));
        prop_assert_eq!(extended.arg_map().unwrap(), arg);
    }
}

fn lift_strategy() -> impl Strategy<Value = LiftedPointSet> {
    prop::collection::btree_map((0i64..5, 0i64..5), (-8i64..8, 1i64..5), 3..10).prop_map(
        |entries| {
            LiftedPointSet::new(
                entries
                    .into_iter()
                    .map(|((x, y), (n, d))| (LatticePoint::from_i64s(&[x, y]), rat(n, d)))
                    .collect(),
            )
            .expect("distinct points")
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subdivision_invariants(lift in lift_strategy()) {
        let sub = lower_hull_subdivision(&lift).unwrap();
        // Supporting forms are tight exactly on the cell points.
        for cell in &sub.cells {
            for (q, h) in lift.entries() {
                let value = q.dot_rat(&cell.normal) + &cell.offset;
                prop_assert!(*h >= value);
                prop_assert_eq!(*h == value, cell.points.contains(q));
            }
        }
        // Areas add up to the hull area in the full-dimensional case.
        if sub.cell_dim == 2 {
            let hull = hull_cycle_2d(&sub.support);
            let total: num_bigint::BigInt =
                sub.cells.iter().map(|c| polygon_area2(&c.vertices)).sum();
            prop_assert_eq!(total, polygon_area2(&hull));
        }
    }

    #[test]
    fn subdivision_is_affine_invariant(lift in lift_strategy(), cx in -5i64..5, cy in -5i64..5, d in -5i64..5) {
        let sub = lower_hull_subdivision(&lift).unwrap();
        let shifted = LiftedPointSet::new(
            lift.entries()
                .iter()
                .map(|(p, h)| {
                    let extra = BigRational::from(p.coord(0) * cx + p.coord(1) * cy)
                        + rat(d, 1);
                    (p.clone(), h + extra)
                })
                .collect(),
        )
        .unwrap();
        let sub2 = lower_hull_subdivision(&shifted).unwrap();
        let cells_of = |s: &coamoeba::newton::RegularSubdivision| -> Vec<Vec<LatticePoint>> {
            s.cells.iter().map(|c| c.points.clone()).collect()
        };
        prop_assert_eq!(cells_of(&sub), cells_of(&sub2));
    }

    #[test]
    fn perturbation_always_triangulates(lift in lift_strategy(), seed in 0u64..1000) {
        let perturbed = perturb_to_triangulation(&lift, seed).unwrap();
        let sub = lower_hull_subdivision(&perturbed).unwrap();
        prop_assert!(is_triangulation(&sub));
        // Heights moved by less than 2^-20.
        let bound = BigRational::new(1.into(), num_bigint::BigInt::from(1u64 << 20));
        for ((p, h), (q, h0)) in perturbed.entries().iter().zip(lift.entries()) {
            prop_assert_eq!(p, q);
            let delta = h - h0;
            prop_assert!(delta >= BigRational::from_integer(0.into()) && delta < bound);
        }
    }

    #[test]
    fn corner_locus_duality_and_balancing(lift in lift_strategy()) {
        let p = TropicalPolynomial::new(
            2,
            lift.entries()
                .iter()
                .map(|(alpha, h)| (alpha.clone(), -h))
                .collect(),
        );
        let curve = corner_locus_2d(&p).unwrap();
        prop_assert!(duality_check(&curve, &curve.subdivision));
        prop_assert!(balancing_check(&curve));
    }

    #[test]
    fn eval_convexity(lift in lift_strategy(), ax in -6i64..6, ay in -6i64..6, bx in -6i64..6, by in -6i64..6) {
        let p = TropicalPolynomial::new(
            2,
            lift.entries()
                .iter()
                .map(|(alpha, h)| (alpha.clone(), -h))
                .collect(),
        );
        let a = vec![rat(ax, 1), rat(ay, 1)];
        let b = vec![rat(bx, 3), rat(by, 2)];
        let mid: Vec<BigRational> = a.iter().zip(&b).map(|(x, y)| (x + y) / rat(2, 1)).collect();
        prop_assert!(p.eval(&mid) * rat(2, 1) <= p.eval(&a) + p.eval(&b));
    }
}

fn unimodularish_matrix() -> impl Strategy<Value = (Vec<Vec<i64>>, i64)> {
    ((-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4))
        .prop_map(|(a, b, c, d)| (vec![vec![a, b], vec![c, d]], a * d - b * c))
        .prop_filter("determinant in [1, 10]", |(_, det)| (1..=10).contains(det))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn covering_counts_and_areas((matrix, det) in unimodularish_matrix(), p1 in 0.0f64..6.2, p2 in 0.0f64..6.2) {
        let s = SimplexCoamoeba {
            matrix_t: matrix,
            phases: vec![p1, p2],
            det,
        };
        let tris = s.polygons_2d();
        prop_assert_eq!(tris.len(), 2 * det as usize);
        let per = PI * PI / (2.0 * det as f64);
        let mut total = 0.0;
        for t in &tris {
            let a = triangle_area(t);
            prop_assert!((a - per).abs() < 1e-9);
            total += a;
        }
        prop_assert!((total - PI * PI).abs() < 1e-8);
    }

    #[test]
    fn polygons_agree_with_membership((matrix, det) in unimodularish_matrix(), p1 in 0.0f64..6.2, t1 in 0.0f64..6.2, t2 in 0.0f64..6.2) {
        let s = SimplexCoamoeba {
            matrix_t: matrix,
            phases: vec![p1, 1.3],
            det,
        };
        let tris = s.polygons_2d();
        let theta = [t1, t2];
        let near_boundary = tris.iter().any(|t| {
            triangle_contains_mod(t, &theta, 1e-4) != triangle_contains_mod(t, &theta, -1e-4)
        });
        if !near_boundary {
            let by_poly = tris.iter().any(|t| triangle_contains_mod(t, &theta, 0.0));
            prop_assert_eq!(s.open_membership(&theta), by_poly);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_documents_round_trip(
        terms in prop::collection::btree_map(
            (0i64..6, 0i64..6),
            ((-20i64..20, 1i64..6), (-4.0f64..4.0, -4.0f64..4.0)),
            1..8,
        )
    ) {
        let f = coamoeba::poly::PolynomialOverSeries::new(
            2,
            terms
                .into_iter()
                .map(|((x, y), ((n, d), (re, im)))| {
                    (
                        LatticePoint::from_i64s(&[x, y]),
                        PuiseuxSeries::monomial(rat(n, d), Complex64::new(re, im + 5.0)),
                    )
                })
                .collect(),
        )
        .unwrap();
        let doc = coamoeba::poly::PolynomialDocument::from_series_polynomial(&f);
        let json = serde_json::to_string(&doc).unwrap();
        let back: coamoeba::poly::PolynomialDocument = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.to_series_polynomial().unwrap(), f);
    }
}
