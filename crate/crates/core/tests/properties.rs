use proptest::prelude::*;
use tropsing_core::arith::{rat, ratio};
use tropsing_core::gallery;
use tropsing_core::linalg::solve_affine;
use tropsing_core::singularity::SingularityTester;
use tropsing_core::*;

fn planar_poly(span: i64, max_terms: usize) -> impl Strategy<Value = TropPoly> {
    (
        proptest::collection::btree_set((0..span, 0..span), 3..=max_terms),
        proptest::collection::vec(-6i64..7, max_terms),
    )
        .prop_filter_map("full dimensional", |(pts, cs)| {
            let terms: Vec<(LatticePoint, Rational)> = pts
                .into_iter()
                .zip(cs)
                .map(|((a, b), c)| (vec![a, b], rat(c)))
                .collect();
            TropPoly::from_terms(2, terms).ok()
        })
}

/// Points of a relatively open face near its sample, along random directions
/// of its affine hull.
fn nearby_points(face: &singularity::LocusFace, dirs: &[(i64, i64)]) -> Vec<Vec<Rational>> {
    let p = &face.polyhedron;
    let a: Vec<Vec<Rational>> = p.equalities.iter().map(|h| h.normal.clone()).collect();
    let b: Vec<Rational> = p.equalities.iter().map(|h| h.offset.clone()).collect();
    let (_, basis) = solve_affine(&a, &b, p.dim).unwrap();
    let mut out = Vec::new();
    for &(s, t) in dirs {
        let u: Vec<Rational> = (0..p.dim)
            .map(|k| {
                basis
                    .iter()
                    .enumerate()
                    .map(|(m, v)| &v[k] * rat(if m == 0 { s } else { t }))
                    .sum()
            })
            .collect();
        let mut scale = ratio(1, 1);
        for _ in 0..40 {
            let x: Vec<Rational> = face.sample.iter().zip(&u).map(|(a, b)| a + b * &scale).collect();
            if p.contains(&x) {
                out.push(x);
                break;
            }
            scale /= rat(2);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coherent_triangulations_are_nonsingular(f in planar_poly(4, 7)) {
        if subdivision(&f).unwrap().is_triangulation() {
            prop_assert!(singular_locus(&f).unwrap().is_empty());
        }
    }

    #[test]
    fn verdicts_are_constant_on_faces(
        f in planar_poly(3, 7),
        dirs in proptest::collection::vec((-3i64..4, -3i64..4), 3),
    ) {
        let locus = singular_locus(&f).unwrap();
        for face in &locus.faces {
            for x in nearby_points(face, &dirs) {
                let v = is_singular_point(&f, &x).unwrap();
                prop_assert_eq!(v.is_singular(), face.verdict.is_singular());
                prop_assert!(locus.contains(&x) == v.is_singular());
            }
        }
    }

    #[test]
    fn locus_matches_point_test_on_a_grid(f in planar_poly(3, 6)) {
        let locus = singular_locus(&f).unwrap();
        let tester = SingularityTester::new(&f).unwrap();
        for a in -4..5 {
            for b in -4..5 {
                let q = vec![ratio(a, 2), ratio(b, 2)];
                prop_assert_eq!(locus.contains(&q), tester.test(&q).unwrap().is_singular());
            }
        }
    }

    #[test]
    fn defective_configuration_singular_iff_both_triples_are_affine(
        p in proptest::collection::vec(-4i64..5, 6),
        nudge in proptest::bool::ANY,
    ) {
        let mut p: Vec<Rational> = p.into_iter().map(rat).collect();
        if nudge {
            p[1] = (&p[0] + &p[2]) / rat(2);
            p[4] = (&p[3] + &p[5]) / rat(2);
        }
        let expected = &p[1] * rat(2) == &p[0] + &p[2] && &p[4] * rat(2) == &p[3] + &p[5];
        let f = gallery::defective_configuration(&p);
        prop_assert_eq!(!singular_locus(&f).unwrap().is_empty(), expected);
    }
}
