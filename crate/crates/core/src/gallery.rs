//! Named polynomials, curve pairs and lift certificates used by tests,
//! benchmarks and the CLI fixtures.

use crate::arith::{rat, Rational};
use crate::intersection::CurvePair;
use crate::laurent::LaurentScalar;
use crate::lift::{LiftPoly, SingularCertificate, TangencyCertificate};
use crate::poly::TropPoly;

fn poly(dim: usize, terms: &[(&[i64], i64)]) -> TropPoly {
    TropPoly::from_ints(dim, terms).expect("valid gallery polynomial")
}

fn lift(dim: usize, terms: &[(&[i64], &str)]) -> LiftPoly {
    LiftPoly::parse_terms(dim, terms).expect("valid gallery lift")
}

fn scalar(s: &str) -> LaurentScalar {
    s.parse().expect("valid scalar")
}

/// Conic whose subdivision is a unimodular triangulation.
pub fn nonsingular_conic() -> TropPoly {
    poly(
        2,
        &[
            (&[0, 0], 1),
            (&[1, 0], 0),
            (&[0, 1], 0),
            (&[1, 1], 0),
            (&[2, 0], 1),
            (&[0, 2], 1),
        ],
    )
}

/// Conic with the single marked cell `{(0,0), (2,0), (0,2)}`.
pub fn single_cell_conic() -> TropPoly {
    poly(
        2,
        &[
            (&[0, 0], 0),
            (&[1, 0], 1),
            (&[0, 1], 1),
            (&[1, 1], 1),
            (&[2, 0], 0),
            (&[0, 2], 0),
        ],
    )
}

/// Curve singular exactly at `(0,0)` and `(2,-2)`.
pub fn two_point_singular_curve() -> TropPoly {
    poly(
        2,
        &[
            (&[0, 0], 0),
            (&[1, 0], 0),
            (&[2, 0], 0),
            (&[1, 1], 0),
            (&[2, 2], 0),
            (&[0, 2], 6),
        ],
    )
}

/// The previous curve with three extra terms whose coefficients lie on the
/// same lower faces, so every point of the curve is singular.
pub fn fully_marked_extension() -> TropPoly {
    poly(
        2,
        &[
            (&[0, 0], 0),
            (&[1, 0], 0),
            (&[2, 0], 0),
            (&[1, 1], 0),
            (&[2, 2], 0),
            (&[0, 2], 6),
            (&[2, 1], 0),
            (&[0, 1], 3),
            (&[1, 2], 3),
        ],
    )
}

/// Two parallel collinear triples in `Z^3`; singular iff both triples have
/// affinely dependent coefficients.
pub fn defective_configuration(p: &[Rational]) -> TropPoly {
    assert_eq!(p.len(), 6);
    let pts: [[i64; 3]; 6] = [[0, 0, 0], [1, 0, 0], [2, 0, 0], [0, 0, 1], [0, 1, 1], [0, 2, 1]];
    TropPoly::from_terms(3, pts.iter().map(|e| e.to_vec()).zip(p.iter().cloned()).collect()).expect("full dimensional")
}

/// Cayley configuration of two tropical lines; a non-singular surface.
pub fn cayley_of_two_lines() -> TropPoly {
    poly(
        3,
        &[
            (&[0, 0, 0], 0),
            (&[1, 0, 0], 0),
            (&[0, 1, 0], 0),
            (&[0, 0, 1], 1),
            (&[1, 0, 1], 0),
            (&[0, 1, 1], 0),
        ],
    )
}

/// Curve with a marked collinear triple whose singular points are `(3,0)`
/// and `(-1,0)`.
pub fn two_singular_points_curve() -> TropPoly {
    poly(
        2,
        &[
            (&[2, 0], 0),
            (&[2, 1], 0),
            (&[2, 2], 0),
            (&[0, 1], 7),
            (&[1, 1], 4),
            (&[4, 1], 7),
        ],
    )
}

/// Curve whose singular points and flags depend on `v1`, `v2`.
pub fn coefficient_dependent_flags(v1: Rational, v2: Rational) -> TropPoly {
    let pts: [[i64; 2]; 6] = [[0, 0], [0, 1], [0, 2], [2, 0], [1, 2], [-2, 0]];
    let coeffs = [rat(0), rat(0), rat(0), rat(0), v1, v2];
    TropPoly::from_terms(2, pts.iter().map(|e| e.to_vec()).zip(coeffs).collect()).expect("full dimensional")
}

/// Conic splitting into two lines; singular along a closed ray.
pub fn pair_of_lines_conic() -> TropPoly {
    poly(
        2,
        &[
            (&[0, 0], 0),
            (&[0, 1], 0),
            (&[0, 2], 0),
            (&[1, 0], 0),
            (&[1, 1], 0),
            (&[2, 0], 1),
        ],
    )
}

/// `0 ⊕ 0⊙w1 ⊕ 0⊙w2`.
pub fn tropical_line() -> TropPoly {
    poly(2, &[(&[0, 0], 0), (&[1, 0], 0), (&[0, 1], 0)])
}

/// Two tropical lines meeting along a ray, transversally.
pub fn two_distinct_lines() -> CurvePair {
    let g = poly(2, &[(&[0, 0], 1), (&[1, 0], 0), (&[0, 1], 0)]);
    CurvePair::new(tropical_line(), g).expect("valid pair")
}

/// A conic and a line, tangent at the origin although their tropical curves
/// cross at a single point.
pub fn jacobian_pitfall_pair() -> CurvePair {
    let f = poly(
        2,
        &[
            (&[0, 0], 0),
            (&[1, 0], 0),
            (&[0, 1], 0),
            (&[1, 1], 0),
            (&[0, 2], 0),
            (&[2, 0], 1),
        ],
    );
    let g = poly(2, &[(&[0, 0], 0), (&[1, 0], 1), (&[0, 1], 0)]);
    CurvePair::new(f, g).expect("valid pair")
}

/// `p1 ⊕ p2⊙w1 ⊕ p3⊙w1^2` and `p4 ⊕ p5⊙w2 ⊕ p6⊙w2^2`.
pub fn univariate_pair(p: [i64; 3], r: [i64; 3]) -> CurvePair {
    let f = TropPoly::from_terms_deficient(2, (0..3).map(|k| (vec![k as i64, 0], rat(p[k]))).collect())
        .expect("valid polynomial");
    let g = TropPoly::from_terms_deficient(2, (0..3).map(|k| (vec![0, k as i64], rat(r[k]))).collect())
        .expect("valid polynomial");
    CurvePair::new(f, g).expect("valid pair")
}

fn two_point_lift() -> LiftPoly {
    lift(
        2,
        &[
            (&[0, 0], "-1"),
            (&[1, 0], "4"),
            (&[2, 0], "-2 + t^6"),
            (&[1, 1], "-2 - 2*t^6"),
            (&[2, 2], "1"),
            (&[0, 2], "t^6"),
        ],
    )
}

/// Lift of [`two_point_singular_curve`] singular at `(1, 1)`.
pub fn two_point_lift_at_one() -> SingularCertificate {
    SingularCertificate {
        poly: two_point_lift(),
        point: vec![scalar("1"), scalar("1")],
        trop_point: vec![rat(0), rat(0)],
    }
}

/// Lift of [`two_point_singular_curve`] singular at `(t^2, t^-2)`.
pub fn two_point_lift_shifted() -> SingularCertificate {
    SingularCertificate {
        poly: lift(
            2,
            &[
                (&[0, 0], "1 - t^2 + t^4"),
                (&[1, 0], "2 - 2*t^2"),
                (&[2, 0], "1"),
                (&[1, 1], "-2 - 2*t^2"),
                (&[2, 2], "1"),
                (&[0, 2], "t^6"),
            ],
        ),
        point: vec![scalar("t^2"), scalar("t^-2")],
        trop_point: vec![rat(2), rat(-2)],
    }
}

/// Lift of [`two_singular_points_curve`] singular at `(t^3, 1)`.
pub fn two_singular_points_lift_right() -> SingularCertificate {
    SingularCertificate {
        poly: lift(
            2,
            &[
                (&[4, 1], "t^7"),
                (&[2, 2], "1"),
                (&[2, 1], "-3*t^13 + t - 2"),
                (&[2, 0], "1"),
                (&[1, 1], "2*t^16 - 2*t^4"),
                (&[0, 1], "t^7"),
            ],
        ),
        point: vec![scalar("t^3"), scalar("1")],
        trop_point: vec![rat(3), rat(0)],
    }
}

/// Lift of [`two_singular_points_curve`] singular at `(1/t, 1)`.
pub fn two_singular_points_lift_left() -> SingularCertificate {
    SingularCertificate {
        poly: lift(
            2,
            &[
                (&[4, 1], "t^7"),
                (&[2, 2], "1"),
                (&[2, 1], "t^9 - 3*t^5 - 2"),
                (&[2, 0], "1"),
                (&[1, 1], "-2*t^8 + 2*t^4"),
                (&[0, 1], "t^7"),
            ],
        ),
        point: vec![scalar("t^-1"), scalar("1")],
        trop_point: vec![rat(-1), rat(0)],
    }
}

/// `(1 + x + xy + t^3 y)^2`, a lift of [`fully_marked_extension`].
pub fn fully_marked_lift() -> LiftPoly {
    let g = lift(2, &[(&[0, 0], "1"), (&[1, 0], "1"), (&[1, 1], "1"), (&[0, 1], "t^3")]);
    LiftPoly::product(&[g.clone(), g]).expect("nonzero product")
}

/// A point of the double curve `1 + x + xy + t^3 y = 0` with `x = c t^a`.
/// `None` when the choice leaves the torus.
pub fn fully_marked_lift_point(a: i64, c: Rational) -> Option<SingularCertificate> {
    let x = LaurentScalar::monomial(c, a);
    let num = -(&LaurentScalar::one() + &x);
    let den = &x + &LaurentScalar::monomial(rat(1), 3);
    let y = &num * &den.inverse()?;
    if y.is_zero() || x.is_zero() {
        return None;
    }
    let trop_point = vec![rat(a), Rational::from_integer(y.order()?.into())];
    Some(SingularCertificate {
        poly: fully_marked_lift(),
        point: vec![x, y],
        trop_point,
    })
}

fn pair_of_lines_factors_raw(p: u32) -> (LiftPoly, LiftPoly) {
    let a = format!("-1 - t^{p}");
    let b = format!("-1 - t^{}", p + 1);
    (
        lift(2, &[(&[0, 0], "1"), (&[1, 0], "1"), (&[0, 1], &a)]),
        lift(2, &[(&[0, 0], "1"), (&[1, 0], "t"), (&[0, 1], &b)]),
    )
}

/// `(1 + x - (1+t^p) y)(1 + t x - (1+t^(p+1)) y)`, singular at `(t^p, 1)`.
pub fn pair_of_lines_lift(p: u32) -> SingularCertificate {
    let (l1, l2) = pair_of_lines_factors_raw(p);
    SingularCertificate {
        poly: LiftPoly::product(&[l1, l2]).expect("nonzero product"),
        point: vec![LaurentScalar::monomial(rat(1), p as i64), LaurentScalar::one()],
        trop_point: vec![rat(p as i64), rat(0)],
    }
}

/// The two line factors of [`pair_of_lines_lift`] meeting at `(t^p, 1)`.
/// They cross transversally, so this certificate does not verify.
pub fn pair_of_lines_factors(p: u32) -> TangencyCertificate {
    let (f, g) = pair_of_lines_factors_raw(p);
    TangencyCertificate {
        f,
        g,
        point: vec![LaurentScalar::monomial(rat(1), p as i64), LaurentScalar::one()],
    }
}

/// [`pair_of_lines_lift`] paired with itself at its singular point.
pub fn pair_of_lines_self_tangency(p: u32) -> TangencyCertificate {
    let c = pair_of_lines_lift(p);
    TangencyCertificate {
        f: c.poly.clone(),
        g: c.poly,
        point: c.point,
    }
}

/// Lift of [`jacobian_pitfall_pair`] tangent at `(-1, -1)`.
pub fn jacobian_pitfall_lift() -> TangencyCertificate {
    TangencyCertificate {
        f: lift(
            2,
            &[
                (&[0, 0], "1 - t"),
                (&[1, 0], "2"),
                (&[0, 1], "2"),
                (&[1, 1], "2"),
                (&[0, 2], "1"),
                (&[2, 0], "t"),
            ],
        ),
        g: lift(2, &[(&[0, 0], "1 + t"), (&[1, 0], "t"), (&[0, 1], "1")]),
        point: vec![scalar("-1"), scalar("-1")],
    }
}
