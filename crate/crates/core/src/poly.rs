//! Tropical polynomials with a fixed support, their evaluation and tropical
//! Euler derivatives.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{render_rational, serde_rational, Rational, TropValue};
use crate::error::{Error, Result};
use crate::support::{AffineForm, LatticePoint, Support};

/// `f = ⊕ p_i ⊙ w^i`, one finite coefficient per support point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropPoly {
    support: Support,
    coeffs: Vec<Rational>,
}

/// Value of a polynomial at a point and the terms attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: TropValue,
    pub argmin: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermJson {
    pub exp: LatticePoint,
    #[serde(with = "serde_rational")]
    pub coeff: Rational,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PolyJson {
    pub dim: usize,
    pub terms: Vec<TermJson>,
}

impl TropPoly {
    pub fn new(support: Support, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != support.len() {
            return Err(Error::DimensionMismatch {
                expected: support.len(),
                got: coeffs.len(),
            });
        }
        Ok(TropPoly { support, coeffs })
    }

    /// Builds a polynomial with full-dimensional support from `(exponent,
    /// coefficient)` pairs.
    pub fn from_terms(dim: usize, terms: Vec<(LatticePoint, Rational)>) -> Result<Self> {
        let (points, coeffs): (Vec<_>, Vec<_>) = terms.into_iter().unzip();
        TropPoly::new(Support::new(dim, points)?, coeffs)
    }

    /// Like [`TropPoly::from_terms`] but allows lower-dimensional supports.
    pub fn from_terms_deficient(dim: usize, terms: Vec<(LatticePoint, Rational)>) -> Result<Self> {
        let (points, coeffs): (Vec<_>, Vec<_>) = terms.into_iter().unzip();
        TropPoly::new(Support::with_deficient_span(dim, points)?, coeffs)
    }

    /// Convenience constructor with integer exponents and coefficients.
    pub fn from_ints(dim: usize, terms: &[(&[i64], i64)]) -> Result<Self> {
        TropPoly::from_terms(
            dim,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), Rational::from_integer((*c).into())))
                .collect(),
        )
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
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

    fn check_point(&self, q: &[Rational]) -> Result<()> {
        if q.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: q.len(),
            });
        }
        Ok(())
    }

    /// The values `v_i = p_i + <i, q>` of every term at `q`.
    pub fn values(&self, q: &[Rational]) -> Result<Vec<Rational>> {
        self.check_point(q)?;
        Ok(self.values_unchecked(q))
    }

    pub(crate) fn values_unchecked(&self, q: &[Rational]) -> Vec<Rational> {
        self.support
            .points()
            .iter()
            .zip(&self.coeffs)
            .map(|(i, p)| {
                let mut v = p.clone();
                for (e, x) in i.iter().zip(q) {
                    if *e != 0 {
                        v += x * Rational::from_integer((*e).into());
                    }
                }
                v
            })
            .collect()
    }

    pub fn eval(&self, q: &[Rational]) -> Result<Evaluation> {
        let values = self.values(q)?;
        Ok(argmin_of(&values))
    }

    /// Whether the minimum at `q` is attained at least twice.
    pub fn on_hypersurface(&self, q: &[Rational]) -> Result<bool> {
        Ok(self.eval(q)?.argmin.len() >= 2)
    }

    /// Indices of the terms kept by the derivative along `form`.
    pub fn derivative_indices(&self, form: &AffineForm) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| form.eval(self.support.point(i)) != 0)
            .collect()
    }

    /// Tropical Euler derivative: the terms on which `form` does not vanish,
    /// with unchanged coefficients. The result may have empty support.
    pub fn euler_derivative(&self, form: &AffineForm) -> TropPoly {
        self.restrict(&self.derivative_indices(form))
    }

    pub(crate) fn restrict(&self, indices: &[usize]) -> TropPoly {
        TropPoly {
            support: self.support.restrict(indices),
            coeffs: indices.iter().map(|&i| self.coeffs[i].clone()).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .support
            .points()
            .iter()
            .zip(&self.coeffs)
            .map(|(e, c)| json!({"exp": e, "coeff": render_rational(c)}))
            .collect();
        json!({"dim": self.dim(), "terms": terms})
    }

    /// Parses the polynomial JSON format. The support must be
    /// full-dimensional.
    pub fn from_json(value: &Value) -> Result<Self> {
        let raw: PolyJson = serde_json::from_value(value.clone())?;
        TropPoly::from_terms(raw.dim, raw.terms.into_iter().map(|t| (t.exp, t.coeff)).collect())
    }

    /// Parses the polynomial JSON format, accepting lower-dimensional
    /// supports.
    pub fn from_json_deficient(value: &Value) -> Result<Self> {
        let raw: PolyJson = serde_json::from_value(value.clone())?;
        TropPoly::from_terms_deficient(raw.dim, raw.terms.into_iter().map(|t| (t.exp, t.coeff)).collect())
    }

    /// Support point to coefficient map, for display.
    pub fn terms(&self) -> BTreeMap<LatticePoint, Rational> {
        self.support
            .points()
            .iter()
            .cloned()
            .zip(self.coeffs.iter().cloned())
            .collect()
    }
}

impl std::fmt::Display for TropPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return f.write_str("inf");
        }
        for (k, (e, c)) in self.support.points().iter().zip(&self.coeffs).enumerate() {
            if k > 0 {
                f.write_str(" ⊕ ")?;
            }
            f.write_str(&render_rational(c))?;
            for (var, &power) in e.iter().enumerate() {
                match power {
                    0 => {}
                    1 => write!(f, "⊙w{}", var + 1)?,
                    _ => write!(f, "⊙w{}^{}", var + 1, power)?,
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn argmin_of(values: &[Rational]) -> Evaluation {
    let Some(min) = values.iter().min() else {
        return Evaluation {
            value: TropValue::Infinity,
            argmin: Vec::new(),
        };
    };
    let argmin = (0..values.len()).filter(|&i| &values[i] == min).collect();
    Evaluation {
        value: TropValue::Finite(min.clone()),
        argmin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::gallery;

    fn origin() -> Vec<Rational> {
        vec![rat(0), rat(0)]
    }

    fn points_of(f: &TropPoly, idx: &[usize]) -> Vec<LatticePoint> {
        idx.iter().map(|&i| f.support().point(i).to_vec()).collect()
    }

    #[test]
    fn evaluation_of_two_point_curve() {
        let f = gallery::two_point_singular_curve();
        let e = f.eval(&origin()).unwrap();
        assert_eq!(e.value, TropValue::Finite(rat(0)));
        assert_eq!(
            points_of(&f, &e.argmin),
            vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![1, 1], vec![2, 2]]
        );
    }

    #[test]
    fn evaluation_of_nonsingular_conic() {
        let f = gallery::nonsingular_conic();
        let e = f.eval(&origin()).unwrap();
        assert_eq!(e.value, TropValue::Finite(rat(0)));
        assert_eq!(points_of(&f, &e.argmin), vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert!(f.on_hypersurface(&origin()).unwrap());
    }

    #[test]
    fn single_term_and_dimension_checks() {
        let f = TropPoly::from_ints(1, &[(&[0], 0), (&[1], 0)]).unwrap();
        assert!(!f.on_hypersurface(&[rat(1)]).unwrap());
        assert!(f.on_hypersurface(&[rat(0)]).unwrap());
        assert!(matches!(f.eval(&origin()), Err(Error::DimensionMismatch { .. })));
        let single = f.restrict(&[1]);
        assert_eq!(single.eval(&[ratio(7, 3)]).unwrap().argmin, vec![0]);
    }

    #[test]
    fn curve_with_two_singular_points_passes_through_them() {
        let f = gallery::two_singular_points_curve();
        assert!(f.on_hypersurface(&[rat(3), rat(0)]).unwrap());
        assert!(f.on_hypersurface(&[rat(-1), rat(0)]).unwrap());
    }

    #[test]
    fn euler_derivatives_keep_nonvanishing_terms() {
        let f = gallery::two_point_singular_curve();
        let d1 = f.euler_derivative(&AffineForm::new(vec![0, 1], -2));
        assert_eq!(d1.support().points(), &[vec![0, 0], vec![1, 0], vec![2, 0], vec![1, 1]]);
        assert!(d1.coeffs().iter().all(|c| *c == rat(0)));
        let d3 = f.euler_derivative(&AffineForm::new(vec![1, -1], 0));
        assert_eq!(d3.support().points(), &[vec![1, 0], vec![2, 0], vec![0, 2]]);
        assert_eq!(d3.coeffs(), &[rat(0), rat(0), rat(6)]);
        assert_eq!(f.euler_derivative(&AffineForm::constant(2, 1)), f);
    }

    #[test]
    fn empty_derivative_has_empty_hypersurface() {
        let f = TropPoly::from_ints(1, &[(&[0], 0), (&[1], 0)]).unwrap();
        let d = f.euler_derivative(&AffineForm::constant(1, 0));
        assert!(d.is_empty());
        let e = d.eval(&[rat(0)]).unwrap();
        assert_eq!(e.value, TropValue::Infinity);
        assert!(!d.on_hypersurface(&[rat(0)]).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let f = gallery::nonsingular_conic();
        assert_eq!(TropPoly::from_json(&f.to_json()).unwrap(), f);
        let bad = json!({"dim": 2, "terms": [{"exp": [0, 0], "coeff": "0"}, {"exp": [1, 0], "coeff": "1"}]});
        assert!(matches!(TropPoly::from_json(&bad), Err(Error::DeficientSpan { .. })));
        assert!(TropPoly::from_json_deficient(&bad).is_ok());
    }

    #[test]
    fn display_lists_terms() {
        let f = TropPoly::from_ints(2, &[(&[0, 0], 1), (&[2, 0], 0), (&[1, 1], 0)]).unwrap();
        assert_eq!(f.to_string(), "1 ⊕ 0⊙w1^2 ⊕ 0⊙w1⊙w2");
    }
}
