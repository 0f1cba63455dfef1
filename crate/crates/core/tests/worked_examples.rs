use tropsing_core::arith::{rat, ratio};
use tropsing_core::gallery;
use tropsing_core::intersection::{intersection_samples, Verdict};
use tropsing_core::singularity::{is_singular_point_full, Piece, PlanarCase};
use tropsing_core::*;

fn pt(a: i64, b: i64) -> Vec<Rational> {
    vec![rat(a), rat(b)]
}

fn singular_samples(f: &TropPoly) -> Vec<Vec<Rational>> {
    singular_locus(f)
        .unwrap()
        .singular_faces()
        .map(|x| x.sample.clone())
        .collect()
}

#[test]
fn conic_origin_has_first_coordinate_witness() {
    let f = gallery::nonsingular_conic();
    let v = is_singular_point(&f, &pt(0, 0)).unwrap();
    let SingularityVerdict::Regular { witness } = &v else {
        panic!("expected a regular point, got {v:?}")
    };
    assert_eq!(witness.to_string(), "w1 - 1");
    let d = f.euler_derivative(witness);
    assert!(!d.on_hypersurface(&pt(0, 0)).unwrap());
    assert_eq!(v, is_singular_point_full(&f, &pt(0, 0)).unwrap());
    assert!(singular_locus(&f).unwrap().is_empty());
}

#[test]
fn two_point_curve_locus_and_lifts() {
    let f = gallery::two_point_singular_curve();
    assert_eq!(singular_samples(&f), vec![pt(0, 0), pt(2, -2)]);
    for c in [gallery::two_point_lift_at_one(), gallery::two_point_lift_shifted()] {
        let r = verify_singular_lift(&c.poly, &c.point, &f, &c.trop_point).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }
}

#[test]
fn fully_marked_extension_is_singular_everywhere() {
    let f = gallery::fully_marked_extension();
    for cell in complex(&f).unwrap() {
        assert!(is_singular_point(&f, &cell.sample()).unwrap().is_singular());
    }
    let lift = gallery::fully_marked_lift();
    assert_eq!(lift.tropicalize().terms(), f.terms());
    for a in -3..4 {
        for c in [rat(2), ratio(-1, 3)] {
            let cert = gallery::fully_marked_lift_point(a, c).unwrap();
            let r = verify_singular_lift(&cert.poly, &cert.point, &f, &cert.trop_point).unwrap();
            assert!(r.passed(), "{}", r.to_json());
            assert!(is_singular_point(&f, &cert.trop_point).unwrap().is_singular());
        }
    }
}

#[test]
fn defective_configuration_condition() {
    let ok = [0, 1, 2, 5, 3, 1].map(rat);
    assert!(!singular_locus(&gallery::defective_configuration(&ok))
        .unwrap()
        .is_empty());
    let bad = [0, 1, 3, 5, 3, 1].map(rat);
    assert!(singular_locus(&gallery::defective_configuration(&bad))
        .unwrap()
        .is_empty());
}

#[test]
fn single_cell_conic_is_nonsingular() {
    let f = gallery::single_cell_conic();
    assert!(singular_locus(&f).unwrap().is_empty());
    assert_eq!(classify_planar(&f).unwrap().case, PlanarCase::Triangulation);
}

#[test]
fn cayley_of_two_lines_surface() {
    let f = gallery::cayley_of_two_lines();
    assert!(singular_locus(&f).unwrap().is_empty());
    let sub = subdivision(&f).unwrap();
    for (cell, _) in &sub.top {
        if let Ok(r) = circuit_pyramid_criterion(&f, cell) {
            assert_eq!(r, None);
        }
    }
}

#[test]
fn curve_with_two_singular_points() {
    let f = gallery::two_singular_points_curve();
    assert_eq!(singular_samples(&f), vec![pt(-1, 0), pt(3, 0)]);
    for c in [
        gallery::two_singular_points_lift_right(),
        gallery::two_singular_points_lift_left(),
    ] {
        assert!(verify_singular_lift(&c.poly, &c.point, &f, &c.trop_point)
            .unwrap()
            .passed());
    }
}

#[test]
fn coefficient_dependent_flags() {
    let f = gallery::coefficient_dependent_flags(rat(1), rat(2));
    assert_eq!(singular_samples(&f), vec![vec![ratio(1, 2), rat(0)]]);
    assert_eq!(
        flag(&f, &[ratio(1, 2), rat(0)]).unwrap().chain(),
        vec![vec![0, 1, 2], vec![0, 1, 2, 3, 5], vec![0, 1, 2, 3, 4, 5]]
    );

    let f = gallery::coefficient_dependent_flags(rat(1), rat(4));
    assert_eq!(singular_samples(&f), vec![pt(1, 0)]);
    assert_eq!(flag(&f, &pt(1, 0)).unwrap().blocks, vec![vec![0, 1, 2], vec![3, 4, 5]]);

    let f = gallery::coefficient_dependent_flags(rat(1), rat(6));
    let samples = singular_samples(&f);
    assert_eq!(samples, vec![pt(1, 0), vec![ratio(5, 3), rat(0)]]);
    assert_eq!(
        flag(&f, &samples[0]).unwrap().blocks,
        vec![vec![0, 1, 2], vec![3, 4], vec![5]]
    );
    assert_eq!(
        flag(&f, &samples[1]).unwrap().blocks,
        vec![vec![0, 1, 2], vec![4, 5], vec![3]]
    );
}

#[test]
fn pair_of_lines_conic_is_singular_along_a_closed_ray() {
    let f = gallery::pair_of_lines_conic();
    let locus = singular_locus(&f).unwrap();
    let dims: Vec<usize> = locus.singular_faces().map(|x| x.dim).collect();
    assert_eq!(dims, vec![0, 1]);
    match &locus.merged()[..] {
        [Piece::Segment {
            start: Some((p, true)),
            end: None,
            ..
        }] => assert_eq!(*p, pt(0, 0)),
        other => panic!("unexpected pieces {other:?}"),
    }
    for p in 0..3u32 {
        let c = gallery::pair_of_lines_lift(p);
        assert!(verify_singular_lift(&c.poly, &c.point, &f, &c.trop_point)
            .unwrap()
            .passed());
        assert!(gallery::pair_of_lines_self_tangency(p).verify().unwrap().passed());
        let crossing = gallery::pair_of_lines_factors(p).verify().unwrap();
        assert!(crossing.f_vanishes && crossing.g_vanishes && !crossing.jacobian_vanishes);
    }
}

#[test]
fn distinct_lines_are_transversal_on_their_common_ray() {
    let pair = gallery::two_distinct_lines();
    let samples = intersection_samples(&pair);
    assert!(!samples.is_empty());
    for q in samples {
        assert_eq!(q[0], q[1]);
        assert!(q[0] <= rat(0));
        let r = is_nontransversal(&pair, &q).unwrap();
        assert!(matches!(r.verdict, Verdict::Transversal { .. }), "{}", r.to_json());
    }
}

#[test]
fn pitfall_pair_is_tangent_at_origin() {
    let pair = gallery::jacobian_pitfall_pair();
    assert!(is_nontransversal(&pair, &pt(0, 0)).unwrap().is_nontransversal());
    assert!(nontransversal_locus(&pair).unwrap().contains(&pt(0, 0)));
    let c = gallery::jacobian_pitfall_lift();
    assert_eq!(c.f.tropicalize().terms(), pair.f().terms());
    assert_eq!(c.g.tropicalize().terms(), pair.g().terms());
    let r = verify_nontransversal_lift(&c.f, &c.g, &c.point).unwrap();
    assert!(r.passed());
}

#[test]
fn locus_refuses_four_variables() {
    let terms: Vec<(LatticePoint, Rational)> = (0..5)
        .map(|k| {
            let mut e = vec![0; 4];
            if k > 0 {
                e[k - 1] = 1;
            }
            (e, rat(0))
        })
        .collect();
    let f = TropPoly::from_terms(4, terms).unwrap();
    let err = singular_locus(&f).unwrap_err();
    assert_eq!(err.kind(), "unsupported_dimension");
}
