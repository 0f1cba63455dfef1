//! Lattice configurations: affine spans, circuits, pyramids, the spanning
//! affine forms of a configuration and the Cayley construction.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{affine_rank, lattice_index, nullspace, primitive_integer};

pub type LatticePoint = Vec<i64>;

/// A finite set of distinct lattice points in `Z^d`, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    dim: usize,
    points: Vec<LatticePoint>,
    affine_dim: usize,
    spans_lattice: bool,
}

#[derive(Serialize, Deserialize)]
struct SupportJson {
    dim: usize,
    points: Vec<LatticePoint>,
}

impl Support {
    /// Validated configuration whose affine span is all of `R^d`.
    pub fn new(dim: usize, points: Vec<LatticePoint>) -> Result<Self> {
        let s = Self::with_deficient_span(dim, points)?;
        if s.affine_dim < dim {
            return Err(Error::DeficientSpan {
                affine_dim: s.affine_dim,
                dim,
            });
        }
        Ok(s)
    }

    /// Like [`Support::new`] but accepts configurations of lower affine
    /// dimension, e.g. one factor of a pair of univariate curves.
    pub fn with_deficient_span(dim: usize, points: Vec<LatticePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(p.clone()));
            }
        }
        let refs: Vec<&[i64]> = points.iter().map(|p| p.as_slice()).collect();
        let affine_dim = affine_rank(&refs) as usize;
        let spans_lattice = lattice_index(&points, dim).is_one();
        Ok(Support {
            dim,
            points,
            affine_dim,
            spans_lattice,
        })
    }

    /// Sub-configuration on the given indices. The result may be empty or of
    /// lower affine dimension.
    pub(crate) fn restrict(&self, indices: &[usize]) -> Support {
        let points: Vec<LatticePoint> = indices.iter().map(|&i| self.points[i].clone()).collect();
        let refs: Vec<&[i64]> = points.iter().map(|p| p.as_slice()).collect();
        let affine_dim = affine_rank(&refs).max(0) as usize;
        let spans_lattice = !points.is_empty() && lattice_index(&points, self.dim).is_one();
        Support {
            dim: self.dim,
            points,
            affine_dim,
            spans_lattice,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[i64] {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim && !self.points.is_empty()
    }

    /// Whether the integer span of the points is all of `Z^d`. Configurations
    /// failing this are accepted; lifts may then need ramified coordinates.
    pub fn spans_lattice(&self) -> bool {
        self.spans_lattice
    }

    pub fn index_of(&self, p: &[i64]) -> Option<usize> {
        self.points.iter().position(|q| q.as_slice() == p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SupportJson {
            dim: self.dim,
            points: self.points.clone(),
        })
        .expect("support serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: SupportJson = serde_json::from_value(value.clone())?;
        Support::new(raw.dim, raw.points)
    }
}

/// Integer affine function `L(w) = <j, w> + beta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineForm {
    pub j: Vec<i64>,
    pub beta: i64,
}

impl AffineForm {
    pub fn new(j: Vec<i64>, beta: i64) -> Self {
        AffineForm { j, beta }
    }

    /// The constant form, whose derivative is the polynomial itself.
    pub fn constant(dim: usize, beta: i64) -> Self {
        AffineForm { j: vec![0; dim], beta }
    }

    pub fn dim(&self) -> usize {
        self.j.len()
    }

    pub fn eval(&self, p: &[i64]) -> i64 {
        self.j.iter().zip(p).map(|(a, b)| a * b).sum::<i64>() + self.beta
    }

    pub fn eval_rational(&self, q: &[Rational]) -> Rational {
        let mut acc = Rational::from_integer(self.beta.into());
        for (a, x) in self.j.iter().zip(q) {
            acc += x * Rational::from_integer((*a).into());
        }
        acc
    }

    /// Representative of `{±L}` whose first nonzero entry of `(j, beta)` is
    /// positive.
    pub fn canonical(&self) -> AffineForm {
        let lead = self.j.iter().chain(std::iter::once(&self.beta)).find(|x| **x != 0);
        match lead {
            Some(x) if *x < 0 => self.negated(),
            _ => self.clone(),
        }
    }

    pub fn negated(&self) -> AffineForm {
        AffineForm {
            j: self.j.iter().map(|x| -x).collect(),
            beta: -self.beta,
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.j.iter().fold(0i64, |g, &x| num_integer::gcd(g, x)) == 1
    }

    fn l1(&self) -> i64 {
        self.j.iter().map(|x| x.abs()).sum()
    }
}

/// Witness order: small slopes first, then small constants, then earlier
/// coordinates first.
impl Ord for AffineForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.l1()
            .cmp(&other.l1())
            .then_with(|| self.beta.abs().cmp(&other.beta.abs()))
            .then_with(|| other.j.cmp(&self.j))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for AffineForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: i64, var: Option<usize>| -> fmt::Result {
            if c == 0 {
                return Ok(());
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match var {
                Some(k) if c.abs() == 1 => write!(f, "w{}", k + 1),
                Some(k) => write!(f, "{}*w{}", c.abs(), k + 1),
                None => write!(f, "{}", c.abs()),
            }
        };
        for (k, &c) in self.j.iter().enumerate() {
            term(f, c, Some(k))?;
        }
        term(f, self.beta, None)?;
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn affine_dim(points: &[LatticePoint]) -> Result<usize> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let refs: Vec<&[i64]> = points.iter().map(|p| p.as_slice()).collect();
    Ok(affine_rank(&refs) as usize)
}

fn affine_rank_of(points: &[LatticePoint], indices: impl Iterator<Item = usize>) -> isize {
    let refs: Vec<&[i64]> = indices.map(|i| points[i].as_slice()).collect();
    affine_rank(&refs)
}

/// Returns the position of an apex if all but that point lie in a hyperplane
/// of the affine span not containing it. Subsets of fewer than three points
/// and affinely independent subsets are pyramids over any of their points.
pub fn is_pyramid(subset: &[LatticePoint]) -> Option<usize> {
    let full = affine_rank_of(subset, 0..subset.len());
    (0..subset.len()).find(|&i| affine_rank_of(subset, (0..subset.len()).filter(|&k| k != i)) < full)
}

/// A minimal affinely dependent subset, by indices into its configuration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Circuit {
    pub indices: Vec<usize>,
    pub dim: usize,
}

/// All circuits among the given points (indices refer to `points`).
pub fn circuits_of(points: &[LatticePoint]) -> Vec<Circuit> {
    let n = points.len();
    let d = points.first().map_or(0, |p| p.len());
    let mut out = Vec::new();
    let mut subset = Vec::new();
    for size in 3..=(d + 2).min(n) {
        combinations(n, size, &mut subset, 0, &mut |s| {
            let r = affine_rank_of(points, s.iter().copied());
            if r != size as isize - 2 {
                return;
            }
            let minimal = (0..size).all(|drop| {
                affine_rank_of(
                    points,
                    s.iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, &i)| i),
                ) == r
            });
            if minimal {
                out.push(Circuit {
                    indices: s.to_vec(),
                    dim: r as usize,
                });
            }
        });
    }
    out
}

pub fn circuits(support: &Support) -> Vec<Circuit> {
    circuits_of(support.points())
}

/// Calls `visit` on every `size`-subset of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, size: usize, buf: &mut Vec<usize>, start: usize, visit: &mut dyn FnMut(&[usize])) {
    if buf.len() == size {
        visit(buf);
        return;
    }
    let need = size - buf.len();
    for i in start..=n.saturating_sub(need) {
        if n < need {
            break;
        }
        buf.push(i);
        combinations(n, size, buf, i + 1, visit);
        buf.pop();
    }
}

/// The primitive integer affine form vanishing on `d` affinely independent
/// points of `Z^d`, canonicalized up to sign.
pub fn hyperplane_through(points: &[&[i64]]) -> Option<AffineForm> {
    let first = points.first()?;
    let d = first.len();
    if points.len() != d || affine_rank(points) != d as isize - 1 {
        return None;
    }
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(first.iter())
                .map(|(a, b)| Rational::from_integer((a - b).into()))
                .collect()
        })
        .collect();
    let ns = nullspace(&rows, d);
    debug_assert_eq!(ns.len(), 1);
    let j: Vec<i64> = primitive_integer(&ns[0])
        .iter()
        .map(|x: &BigInt| x.to_i64().expect("normal fits in i64"))
        .collect();
    let beta = -j.iter().zip(first.iter()).map(|(a, b)| a * b).sum::<i64>();
    Some(AffineForm { j, beta }.canonical())
}

/// The finite set of primitive integer affine forms whose zero set meets the
/// configuration in an affinely `(d-1)`-dimensional subset, one per
/// hyperplane, sorted in witness order.
pub fn spanning_forms(support: &Support) -> Result<Vec<AffineForm>> {
    if !support.is_full_dimensional() {
        return Err(Error::DeficientSpan {
            affine_dim: support.affine_dim(),
            dim: support.dim(),
        });
    }
    let d = support.dim();
    let pts = support.points();
    let mut forms = BTreeSet::new();
    let mut covered: Vec<BTreeSet<usize>> = Vec::new();
    let mut buf = Vec::new();
    combinations(pts.len(), d, &mut buf, 0, &mut |s| {
        // Skip seeds already inside a found hyperplane.
        if covered.iter().any(|z| s.iter().all(|i| z.contains(i))) {
            return;
        }
        let refs: Vec<&[i64]> = s.iter().map(|&i| pts[i].as_slice()).collect();
        if let Some(form) = hyperplane_through(&refs) {
            let zeros: BTreeSet<usize> = (0..pts.len()).filter(|&i| form.eval(&pts[i]) == 0).collect();
            covered.push(zeros);
            forms.insert(form);
        }
    });
    Ok(forms.into_iter().collect())
}

/// Which source configuration a Cayley point came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Layer {
    First,
    Second,
}

/// `A1 × {0} ∪ A2 × {1}` in `Z^3`, with the points of `A1` listed first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyConfig {
    pub support: Support,
    pub first_len: usize,
}

impl CayleyConfig {
    /// Layer and index into the source configuration of a Cayley point.
    pub fn origin(&self, k: usize) -> (Layer, usize) {
        if k < self.first_len {
            (Layer::First, k)
        } else {
            (Layer::Second, k - self.first_len)
        }
    }
}

/// Cayley configuration of two planar supports. Requires `Z A1 + Z A2 = Z^2`.
pub fn cayley(a1: &Support, a2: &Support) -> Result<CayleyConfig> {
    for s in [a1, a2] {
        if s.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: s.dim(),
            });
        }
    }
    let rows: Vec<Vec<i64>> = a1.points().iter().chain(a2.points()).cloned().collect();
    if !lattice_index(&rows, 2).is_one() {
        return Err(Error::LatticeSpan { dim: 2 });
    }
    let lift = |p: &LatticePoint, h: i64| vec![p[0], p[1], h];
    let points: Vec<LatticePoint> = a1
        .points()
        .iter()
        .map(|p| lift(p, 0))
        .chain(a2.points().iter().map(|p| lift(p, 1)))
        .collect();
    Ok(CayleyConfig {
        support: Support::new(3, points)?,
        first_len: a1.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn pts(raw: &[&[i64]]) -> Vec<LatticePoint> {
        raw.iter().map(|p| p.to_vec()).collect()
    }

    fn conic_support() -> Support {
        Support::new(2, pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[2, 0], &[0, 2]])).unwrap()
    }

    #[test]
    fn support_validation() {
        assert!(matches!(Support::new(2, vec![]), Err(Error::EmptyPointSet)));
        assert!(matches!(
            Support::new(2, pts(&[&[0, 0], &[1, 0], &[2, 0]])),
            Err(Error::DeficientSpan { affine_dim: 1, dim: 2 })
        ));
        assert!(matches!(
            Support::new(2, pts(&[&[0, 0], &[1, 0], &[1, 0]])),
            Err(Error::DuplicatePoint(_))
        ));
        assert!(matches!(
            Support::new(2, pts(&[&[0, 0], &[1]])),
            Err(Error::DimensionMismatch { .. })
        ));
        let coarse = Support::new(2, pts(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap();
        assert!(!coarse.spans_lattice());
        assert!(conic_support().spans_lattice());
    }

    #[test]
    fn affine_dims() {
        assert_eq!(affine_dim(&pts(&[&[0, 0]])).unwrap(), 0);
        assert_eq!(affine_dim(&pts(&[&[0, 0], &[1, 0], &[2, 0]])).unwrap(), 1);
        assert_eq!(affine_dim(&pts(&[&[0, 0], &[1, 0], &[1, 1]])).unwrap(), 2);
        assert!(affine_dim(&[]).is_err());
    }

    #[test]
    fn pyramids() {
        assert!(is_pyramid(&pts(&[&[0, 0], &[2, 0], &[0, 2]])).is_some());
        let cell = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(is_pyramid(&cell), Some(0));
        assert_eq!(is_pyramid(&pts(&[&[0, 0], &[1, 0], &[2, 0]])), None);
        assert_eq!(is_pyramid(&pts(&[&[3, 3]])), Some(0));
        assert!(is_pyramid(&pts(&[&[0], &[4]])).is_some());
    }

    #[test]
    fn circuit_examples() {
        let line = Support::new(1, pts(&[&[0], &[1], &[2]])).unwrap();
        assert_eq!(
            circuits(&line),
            vec![Circuit {
                indices: vec![0, 1, 2],
                dim: 1
            }]
        );

        let prism = Support::new(
            3,
            pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, 1], &[0, 1, 1]]),
        )
        .unwrap();
        let cs = circuits(&prism);
        assert!(cs.contains(&Circuit {
            indices: vec![1, 2, 4, 5],
            dim: 2
        }));

        let defective = Support::new(
            3,
            pts(&[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0], &[0, 0, 1], &[0, 1, 1], &[0, 2, 1]]),
        )
        .unwrap();
        assert_eq!(
            circuits(&defective),
            vec![
                Circuit {
                    indices: vec![0, 1, 2],
                    dim: 1
                },
                Circuit {
                    indices: vec![3, 4, 5],
                    dim: 1
                }
            ]
        );
    }

    /// Independent oracle: maximal subsets of affine dimension `d-1` that are
    /// closed under taking affine spans within the configuration.
    fn brute_force_hyperplane_sets(s: &Support) -> BTreeSet<Vec<usize>> {
        let n = s.len();
        let d = s.dim();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if affine_rank_of(s.points(), idx.iter().copied()) != d as isize - 1 {
                continue;
            }
            let closed = (0..n)
                .filter(|i| !idx.contains(i))
                .all(|i| affine_rank_of(s.points(), idx.iter().copied().chain([i])) == d as isize);
            if closed {
                out.insert(idx);
            }
        }
        out
    }

    fn zero_sets(s: &Support, forms: &[AffineForm]) -> BTreeSet<Vec<usize>> {
        forms
            .iter()
            .map(|l| (0..s.len()).filter(|&i| l.eval(s.point(i)) == 0).collect())
            .collect()
    }

    #[test]
    fn spanning_forms_of_conic_support() {
        let s = conic_support();
        let forms = spanning_forms(&s).unwrap();
        assert_eq!(forms.len(), 9);
        assert!(forms.contains(&AffineForm::new(vec![1, 0], -1)));
        assert_eq!(zero_sets(&s, &forms), brute_force_hyperplane_sets(&s));
        for l in &forms {
            assert!(l.is_primitive());
            assert_eq!(&l.canonical(), l);
        }
    }

    #[test]
    fn spanning_forms_on_a_line() {
        let s = Support::new(1, pts(&[&[0], &[1], &[2], &[3]])).unwrap();
        let forms = spanning_forms(&s).unwrap();
        let expected: BTreeSet<AffineForm> = (0..4).map(|a| AffineForm::new(vec![1], -a)).collect();
        assert_eq!(forms.into_iter().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn witness_order_prefers_first_coordinate() {
        let x1 = AffineForm::new(vec![1, 0], -1);
        let y1 = AffineForm::new(vec![0, 1], -1);
        let x = AffineForm::new(vec![1, 0], 0);
        let diag = AffineForm::new(vec![1, -1], 0);
        let mut v = vec![diag.clone(), y1.clone(), x1.clone(), x.clone()];
        v.sort();
        assert_eq!(v, vec![x, x1, y1, diag]);
    }

    #[test]
    fn form_display() {
        assert_eq!(AffineForm::new(vec![1, 0], -1).to_string(), "w1 - 1");
        assert_eq!(AffineForm::new(vec![-1, -1], 1).to_string(), "-w1 - w2 + 1");
        assert_eq!(AffineForm::constant(2, 1).to_string(), "1");
        assert_eq!(AffineForm::new(vec![2, 0, 1], 0).to_string(), "2*w1 + w3");
    }

    #[test]
    fn cayley_of_two_lines_is_a_prism() {
        let tri = Support::new(2, pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        let c = cayley(&tri, &tri).unwrap();
        assert_eq!(
            c.support.points(),
            pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, 1], &[0, 1, 1]]).as_slice()
        );
        assert_eq!(c.origin(4), (Layer::Second, 1));
    }

    #[test]
    fn cayley_of_univariate_factors() {
        let a1 = Support::with_deficient_span(2, pts(&[&[0, 0], &[1, 0], &[2, 0]])).unwrap();
        let a2 = Support::with_deficient_span(2, pts(&[&[0, 0], &[0, 1], &[0, 2]])).unwrap();
        let c = cayley(&a1, &a2).unwrap();
        assert_eq!(
            c.support.points(),
            pts(&[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0], &[0, 0, 1], &[0, 1, 1], &[0, 2, 1]]).as_slice()
        );
    }

    #[test]
    fn cayley_rejects_sublattice() {
        let a1 = Support::with_deficient_span(2, pts(&[&[0, 0]])).unwrap();
        let a2 = Support::with_deficient_span(2, pts(&[&[0, 0], &[1, 0]])).unwrap();
        assert!(matches!(cayley(&a1, &a2), Err(Error::LatticeSpan { .. })));
    }

    use proptest::prelude::*;

    fn random_support(d: usize) -> impl Strategy<Value = Support> {
        proptest::collection::btree_set(proptest::collection::vec(-2i64..3, d), d + 1..8)
            .prop_filter_map("full dimensional", move |set| {
                Support::new(d, set.into_iter().collect()).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn spanning_forms_match_brute_force(s in random_support(2)) {
            let forms = spanning_forms(&s).unwrap();
            prop_assert_eq!(zero_sets(&s, &forms), brute_force_hyperplane_sets(&s));
            prop_assert_eq!(forms.len(), zero_sets(&s, &forms).len());
        }

        #[test]
        fn pyramid_iff_some_point_drops_dimension(s in random_support(2)) {
            let p = s.points();
            let full = affine_rank_of(p, 0..p.len());
            let drops = (0..p.len()).any(|i| affine_rank_of(p, (0..p.len()).filter(|&k| k != i)) < full);
            prop_assert_eq!(is_pyramid(p).is_some(), drops);
        }

        #[test]
        fn circuits_are_minimal_dependent(s in random_support(3)) {
            for c in circuits(&s) {
                let r = affine_rank_of(s.points(), c.indices.iter().copied());
                prop_assert!(r < c.indices.len() as isize - 1);
                for drop in 0..c.indices.len() {
                    let rest = c.indices.iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, &i)| i);
                    prop_assert_eq!(affine_rank_of(s.points(), rest), c.indices.len() as isize - 2);
                }
            }
        }
    }
}
