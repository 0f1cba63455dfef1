//! Classical polynomials over `Q(t)` and exact verification of singular and
//! tangency certificates.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::arith::{parse_rational, render_point, Rational, TropValue};
use crate::error::{Error, Result};
use crate::laurent::LaurentScalar;
use crate::poly::TropPoly;
use crate::support::{AffineForm, LatticePoint, Support};

/// `F = Σ a_i x^i` with every `a_i` nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftPoly {
    support: Support,
    coeffs: Vec<LaurentScalar>,
}

impl LiftPoly {
    pub fn new(support: Support, coeffs: Vec<LaurentScalar>) -> Result<Self> {
        if coeffs.len() != support.len() {
            return Err(Error::DimensionMismatch {
                expected: support.len(),
                got: coeffs.len(),
            });
        }
        if let Some(k) = coeffs.iter().position(LaurentScalar::is_zero) {
            return Err(Error::ZeroCoefficient(support.point(k).to_vec()));
        }
        Ok(LiftPoly { support, coeffs })
    }

    pub fn from_terms(dim: usize, terms: Vec<(LatticePoint, LaurentScalar)>) -> Result<Self> {
        let (points, coeffs): (Vec<_>, Vec<_>) = terms.into_iter().unzip();
        LiftPoly::new(Support::with_deficient_span(dim, points)?, coeffs)
    }

    /// Terms given as `(exponent, scalar text)`.
    pub fn parse_terms(dim: usize, terms: &[(&[i64], &str)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|(e, s)| Ok((e.to_vec(), s.parse()?)))
            .collect::<Result<Vec<_>>>()?;
        LiftPoly::from_terms(dim, parsed)
    }

    /// Expands a product of polynomials, dropping cancelled terms.
    pub fn product(factors: &[LiftPoly]) -> Result<Self> {
        let dim = factors.first().map_or(0, |f| f.dim());
        let mut acc: std::collections::BTreeMap<LatticePoint, LaurentScalar> =
            [(vec![0; dim], LaurentScalar::one())].into_iter().collect();
        for f in factors {
            let mut next = std::collections::BTreeMap::new();
            for (e, a) in &acc {
                for (p, b) in f.support.points().iter().zip(&f.coeffs) {
                    let k: LatticePoint = e.iter().zip(p).map(|(x, y)| x + y).collect();
                    let slot = next.entry(k).or_insert_with(LaurentScalar::zero);
                    *slot = &*slot + &(a * b);
                }
            }
            acc = next;
        }
        LiftPoly::from_terms(dim, acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn coeffs(&self) -> &[LaurentScalar] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.support.dim()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `F(b)` at a point of the torus.
    pub fn eval(&self, b: &[LaurentScalar]) -> Result<LaurentScalar> {
        if b.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: b.len(),
            });
        }
        if let Some(k) = b.iter().position(LaurentScalar::is_zero) {
            return Err(Error::NotInvertible(k));
        }
        Ok(self
            .support
            .points()
            .iter()
            .zip(&self.coeffs)
            .map(|(e, a)| {
                e.iter()
                    .zip(b)
                    .fold(a.clone(), |acc, (&k, x)| &acc * &x.pow(k).expect("nonzero coordinate"))
            })
            .sum())
    }

    /// `Σ L(i) a_i x^i`, dropping the terms where `L` vanishes.
    pub fn euler_derivative(&self, form: &AffineForm) -> LiftPoly {
        let kept: Vec<usize> = (0..self.len())
            .filter(|&i| form.eval(self.support.point(i)) != 0)
            .collect();
        LiftPoly {
            support: self.support.restrict(&kept),
            coeffs: kept
                .iter()
                .map(|&i| &self.coeffs[i] * &LaurentScalar::from_int(form.eval(self.support.point(i))))
                .collect(),
        }
    }

    /// `x_k ∂F/∂x_k`.
    pub fn log_partial(&self, k: usize) -> LiftPoly {
        let mut j = vec![0; self.dim()];
        j[k] = 1;
        self.euler_derivative(&AffineForm::new(j, 0))
    }

    /// The tropical polynomial `⊕ val(a_i) ⊙ w^i`.
    pub fn tropicalize(&self) -> TropPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| Rational::from_integer(a.order().expect("nonzero coefficient").into()))
            .collect();
        TropPoly::new(self.support.clone(), coeffs).expect("lengths agree")
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .support
            .points()
            .iter()
            .zip(&self.coeffs)
            .map(|(e, c)| json!({"exp": e, "coeff": c.to_string()}))
            .collect();
        json!({"dim": self.dim(), "terms": terms})
    }

    /// Reads `{"terms": [{"exp": [...], "coeff": "<scalar>"}]}`; `dim` is
    /// optional when there is at least one term.
    pub fn from_json(value: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Term {
            exp: LatticePoint,
            coeff: LaurentScalar,
        }
        #[derive(Deserialize)]
        struct Raw {
            dim: Option<usize>,
            terms: Vec<Term>,
        }
        let raw: Raw = serde_json::from_value(value.clone())?;
        let dim = raw
            .dim
            .or_else(|| raw.terms.first().map(|t| t.exp.len()))
            .ok_or(Error::EmptyPointSet)?;
        LiftPoly::from_terms(dim, raw.terms.into_iter().map(|t| (t.exp, t.coeff)).collect())
    }
}

fn parse_scalars(v: &Value) -> Result<Vec<LaurentScalar>> {
    let raw: Vec<String> = serde_json::from_value(v.clone())?;
    raw.iter().map(|s| s.parse()).collect()
}

fn scalars_json(b: &[LaurentScalar]) -> Value {
    json!(b.iter().map(ToString::to_string).collect::<Vec<_>>())
}

/// A claimed singular point `b` of `V(F)` over the tropical point `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularCertificate {
    pub poly: LiftPoly,
    pub point: Vec<LaurentScalar>,
    pub trop_point: Vec<Rational>,
}

impl SingularCertificate {
    pub fn from_json(value: &Value) -> Result<Self> {
        let field = |k: &str| value.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));
        let q: Vec<String> = serde_json::from_value(field("q")?.clone())?;
        Ok(SingularCertificate {
            poly: LiftPoly::from_json(field("F")?)?,
            point: parse_scalars(field("b")?)?,
            trop_point: q.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "F": self.poly.to_json(),
            "b": scalars_json(&self.point),
            "q": render_point(&self.trop_point),
        })
    }

    /// Verifies against `Trop(F)`.
    pub fn verify(&self) -> Result<SingularLiftReport> {
        verify_singular_lift(&self.poly, &self.point, &self.poly.tropicalize(), &self.trop_point)
    }
}

/// A claimed common point of `V(F)` and `V(G)` with dependent gradients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyCertificate {
    pub f: LiftPoly,
    pub g: LiftPoly,
    pub point: Vec<LaurentScalar>,
}

impl TangencyCertificate {
    pub fn from_json(value: &Value) -> Result<Self> {
        let field = |k: &str| value.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));
        Ok(TangencyCertificate {
            f: LiftPoly::from_json(field("F")?)?,
            g: LiftPoly::from_json(field("G")?)?,
            point: parse_scalars(field("b")?)?,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({"F": self.f.to_json(), "G": self.g.to_json(), "b": scalars_json(&self.point)})
    }

    pub fn verify(&self) -> Result<TangencyLiftReport> {
        verify_nontransversal_lift(&self.f, &self.g, &self.point)
    }
}

/// Itemized outcome of [`verify_singular_lift`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLiftReport {
    pub tropicalization_matches: bool,
    pub valuations_match: bool,
    pub vanishes: bool,
    /// Whether `x_k ∂F/∂x_k (b) = 0`, per coordinate.
    pub partials_vanish: Vec<bool>,
}

impl SingularLiftReport {
    pub fn passed(&self) -> bool {
        self.tropicalization_matches
            && self.valuations_match
            && self.vanishes
            && self.partials_vanish.iter().all(|&b| b)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "singular",
            "passed": self.passed(),
            "tropicalization_matches": self.tropicalization_matches,
            "valuations_match": self.valuations_match,
            "vanishes": self.vanishes,
            "partials_vanish": self.partials_vanish,
        })
    }
}

/// Checks that `b` is a singular point of `V(F)` lying over `q` and that
/// `Trop(F) = f`.
pub fn verify_singular_lift(
    poly: &LiftPoly,
    b: &[LaurentScalar],
    f: &TropPoly,
    q: &[Rational],
) -> Result<SingularLiftReport> {
    let d = poly.dim();
    if b.len() != d || q.len() != d || f.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: if b.len() != d {
                b.len()
            } else if q.len() != d {
                q.len()
            } else {
                f.dim()
            },
        });
    }
    let valuations_match = b
        .iter()
        .zip(q)
        .all(|(x, qk)| x.valuation() == TropValue::Finite(qk.clone()));
    let vanishes = poly.eval(b)?.is_zero();
    let partials_vanish = (0..d)
        .map(|k| Ok(poly.log_partial(k).eval(b)?.is_zero()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SingularLiftReport {
        tropicalization_matches: same_polynomial(&poly.tropicalize(), f),
        valuations_match,
        vanishes,
        partials_vanish,
    })
}

/// Equality up to the order in which terms are listed.
fn same_polynomial(a: &TropPoly, b: &TropPoly) -> bool {
    a.dim() == b.dim() && a.terms() == b.terms()
}

/// Itemized outcome of [`verify_nontransversal_lift`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyLiftReport {
    pub f_vanishes: bool,
    pub g_vanishes: bool,
    pub jacobian_vanishes: bool,
    /// Nonzero `(y1, y2)` with `y1 ∇F(b) + y2 ∇G(b) = 0`, normalized to `y1 = 1`.
    pub covector: Option<(LaurentScalar, LaurentScalar)>,
    /// `val(y2 / y1)`, the third coordinate of the lifted Cayley point.
    pub slope: Option<TropValue>,
}

impl TangencyLiftReport {
    pub fn passed(&self) -> bool {
        self.f_vanishes && self.g_vanishes && self.jacobian_vanishes
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "nontransversal",
            "passed": self.passed(),
            "f_vanishes": self.f_vanishes,
            "g_vanishes": self.g_vanishes,
            "jacobian_vanishes": self.jacobian_vanishes,
            "covector": self.covector.as_ref().map(|(a, b)| vec![a.to_string(), b.to_string()]),
            "slope": self.slope.as_ref().map(ToString::to_string),
        })
    }
}

/// Checks `F(b) = G(b) = 0` and that the Jacobian of `(F, G)` is singular
/// at `b`.
pub fn verify_nontransversal_lift(f: &LiftPoly, g: &LiftPoly, b: &[LaurentScalar]) -> Result<TangencyLiftReport> {
    for p in [f, g] {
        if p.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: p.dim(),
            });
        }
    }
    let f_vanishes = f.eval(b)?.is_zero();
    let g_vanishes = g.eval(b)?.is_zero();
    // Logarithmic partials scale each row by a unit, which changes neither
    // the determinant's vanishing nor the kernel.
    let fx = f.log_partial(0).eval(b)?;
    let fy = f.log_partial(1).eval(b)?;
    let gx = g.log_partial(0).eval(b)?;
    let gy = g.log_partial(1).eval(b)?;
    let jacobian_vanishes = (&(&fx * &gy) - &(&fy * &gx)).is_zero();
    let covector = if !jacobian_vanishes {
        None
    } else if !(gx.is_zero() && fx.is_zero()) {
        Some((gx.clone(), -&fx))
    } else if !(gy.is_zero() && fy.is_zero()) {
        Some((gy.clone(), -&fy))
    } else {
        None
    };
    let covector = covector.and_then(|(y1, y2)| {
        let inv = y1.inverse()?;
        Some((LaurentScalar::one(), &y2 * &inv))
    });
    let slope = covector.as_ref().map(|(_, y2)| y2.valuation());
    Ok(TangencyLiftReport {
        f_vanishes,
        g_vanishes,
        jacobian_vanishes,
        covector,
        slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::gallery;
    use proptest::prelude::*;

    fn s(x: &str) -> LaurentScalar {
        x.parse().unwrap()
    }

    #[test]
    fn tropicalization_of_two_point_lifts() {
        let c = gallery::two_point_lift_at_one();
        assert_eq!(c.poly.tropicalize(), gallery::two_point_singular_curve());
        let c = gallery::two_point_lift_shifted();
        assert_eq!(c.poly.tropicalize(), gallery::two_point_singular_curve());
    }

    #[test]
    fn tropicalization_of_binomial_powers() {
        for m in 1..6 {
            let factor = LiftPoly::parse_terms(1, &[(&[1], "1"), (&[0], "-1")]).unwrap();
            let f = LiftPoly::product(&vec![factor; m]).unwrap();
            assert_eq!(f.len(), m + 1);
            assert!(f.tropicalize().coeffs().iter().all(|c| *c == rat(0)));
        }
        let mono = LiftPoly::parse_terms(1, &[(&[1], "3*t^2")]).unwrap();
        assert_eq!(mono.tropicalize().coeffs(), &[rat(2)]);
    }

    #[test]
    fn classical_euler_derivative() {
        let f = LiftPoly::parse_terms(
            2,
            &[
                (&[0, 0], "1"),
                (&[1, 0], "2"),
                (&[0, 1], "3"),
                (&[1, 1], "5"),
                (&[2, 0], "7"),
                (&[0, 2], "t"),
            ],
        )
        .unwrap();
        assert_eq!(f.euler_derivative(&AffineForm::constant(2, 1)), f);
        let d = f.euler_derivative(&AffineForm::new(vec![1, 0], 0));
        assert_eq!(d.support().points(), &[vec![1, 0], vec![1, 1], vec![2, 0]]);
        assert_eq!(d.coeffs(), &[s("2"), s("5"), s("14")]);
    }

    #[test]
    fn zero_coefficients_and_points_are_rejected() {
        assert!(matches!(
            LiftPoly::parse_terms(1, &[(&[0], "1"), (&[1], "t - t")]),
            Err(Error::ZeroCoefficient(_))
        ));
        let f = LiftPoly::parse_terms(1, &[(&[0], "1"), (&[1], "1")]).unwrap();
        assert!(matches!(f.eval(&[LaurentScalar::zero()]), Err(Error::NotInvertible(0))));
    }

    #[test]
    fn paper_singular_certificates_verify() {
        for c in [
            gallery::two_point_lift_at_one(),
            gallery::two_point_lift_shifted(),
            gallery::two_singular_points_lift_right(),
            gallery::two_singular_points_lift_left(),
        ] {
            assert!(c.verify().unwrap().passed(), "{}", c.to_json());
        }
        for p in 0..3 {
            assert!(gallery::pair_of_lines_lift(p).verify().unwrap().passed());
        }
    }

    #[test]
    fn wrong_point_fails_verification() {
        let mut c = gallery::two_point_lift_at_one();
        c.point = vec![s("1"), s("2")];
        let r = c.verify().unwrap();
        assert!(!r.vanishes);
        assert!(!r.passed());
        let mut c = gallery::two_point_lift_at_one();
        c.trop_point = vec![rat(1), rat(0)];
        assert!(!c.verify().unwrap().valuations_match);
    }

    #[test]
    fn pitfall_pair_certificate() {
        let c = gallery::jacobian_pitfall_lift();
        let r = c.verify().unwrap();
        assert!(r.passed());
        assert_eq!(r.covector, Some((s("1"), s("2"))));
        assert_eq!(r.slope, Some(TropValue::Finite(rat(0))));
    }

    #[test]
    fn transversal_lines_fail() {
        let f = LiftPoly::parse_terms(2, &[(&[0, 0], "1"), (&[1, 0], "1"), (&[0, 1], "-2")]).unwrap();
        let g = LiftPoly::parse_terms(2, &[(&[0, 0], "1"), (&[1, 0], "-2"), (&[0, 1], "1")]).unwrap();
        let r = verify_nontransversal_lift(&f, &g, &[s("1"), s("1")]).unwrap();
        assert!(r.f_vanishes && r.g_vanishes);
        assert!(!r.jacobian_vanishes);
        assert!(!r.passed());
    }

    #[test]
    fn certificate_json_round_trip() {
        let c = gallery::two_point_lift_shifted();
        assert_eq!(SingularCertificate::from_json(&c.to_json()).unwrap(), c);
        let t = gallery::jacobian_pitfall_lift();
        assert_eq!(TangencyCertificate::from_json(&t.to_json()).unwrap(), t);
    }

    fn random_lift() -> impl Strategy<Value = LiftPoly> {
        proptest::collection::btree_map(
            (0i64..3, 0i64..3),
            proptest::collection::vec((-3i64..4, 0i64..4), 1..3),
            1..6,
        )
        .prop_filter_map("nonzero coefficients", |terms| {
            let terms: Vec<(LatticePoint, LaurentScalar)> = terms
                .into_iter()
                .map(|((a, b), cs)| {
                    let c: LaurentScalar = cs.into_iter().map(|(c, k)| LaurentScalar::monomial(rat(c), k)).sum();
                    (vec![a, b], c)
                })
                .collect();
            LiftPoly::from_terms(2, terms).ok()
        })
    }

    proptest! {
        #[test]
        fn tropicalization_commutes_with_derivatives(
            f in random_lift(),
            j in proptest::collection::vec(-2i64..3, 2),
            beta in -2i64..3,
        ) {
            let form = AffineForm::new(j, beta);
            prop_assert_eq!(
                f.euler_derivative(&form).tropicalize(),
                f.tropicalize().euler_derivative(&form)
            );
        }
    }
}
