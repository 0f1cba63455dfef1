//! Exact polyhedra over Q: feasibility by Fourier–Motzkin elimination with
//! strict inequalities, projection, canonical forms of relatively open
//! polyhedra and face enumeration of hyperplane arrangements.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::arith::{render_point, render_rational, Rational};
use crate::linalg::{primitive_integer, rank, rref, solve_affine};
use crate::poly::TropPoly;

/// The affine function `x ↦ <normal, x> - offset`, or its zero set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: &Rational) -> Sign {
        if x.is_negative() {
            Sign::Neg
        } else if x.is_zero() {
            Sign::Zero
        } else {
            Sign::Pos
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        Hyperplane { normal, offset }
    }

    pub fn from_ints(normal: &[i64], offset: i64) -> Self {
        Hyperplane {
            normal: normal.iter().map(|&x| Rational::from_integer(x.into())).collect(),
            offset: Rational::from_integer(offset.into()),
        }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = -self.offset.clone();
        for (a, b) in self.normal.iter().zip(x) {
            if !a.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn sign(&self, x: &[Rational]) -> Sign {
        Sign::of(&self.eval(x))
    }

    pub fn negated(&self) -> Hyperplane {
        Hyperplane {
            normal: self.normal.iter().map(|x| -x).collect(),
            offset: -self.offset.clone(),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.normal.iter().all(|x| x.is_zero())
    }

    /// Positive rescaling with a primitive integer normal.
    fn primitive(&self) -> Hyperplane {
        if self.is_degenerate() {
            return self.clone();
        }
        let ints = primitive_integer(&self.normal);
        let k = self
            .normal
            .iter()
            .zip(&ints)
            .find(|(a, _)| !a.is_zero())
            .map(|(a, b)| Rational::from_integer(b.clone()) / a)
            .expect("nonzero normal");
        Hyperplane {
            normal: ints.into_iter().map(Rational::from_integer).collect(),
            offset: &self.offset * k,
        }
    }

    /// Representative of the zero set with a primitive integer normal whose
    /// first nonzero entry is positive. `None` for a zero normal.
    pub fn canonical(&self) -> Option<Hyperplane> {
        if self.is_degenerate() {
            return None;
        }
        let p = self.primitive();
        let lead_negative = p.normal.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        Some(if lead_negative { p.negated() } else { p })
    }

    pub fn to_json(&self) -> Value {
        json!({"normal": render_point(&self.normal), "offset": render_rational(&self.offset)})
    }
}

/// `{x : h(x) = 0 for equalities, h(x) <= 0 for weak, h(x) < 0 for strict}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HPolyhedron {
    pub dim: usize,
    pub equalities: Vec<Hyperplane>,
    pub weak: Vec<Hyperplane>,
    pub strict: Vec<Hyperplane>,
}

#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<Rational>,
    rhs: Rational,
    strict: bool,
}

impl HPolyhedron {
    pub fn universe(dim: usize) -> Self {
        HPolyhedron {
            dim,
            equalities: Vec::new(),
            weak: Vec::new(),
            strict: Vec::new(),
        }
    }

    pub fn with_equality(mut self, h: Hyperplane) -> Self {
        self.equalities.push(h);
        self
    }

    pub fn with_weak(mut self, h: Hyperplane) -> Self {
        self.weak.push(h);
        self
    }

    pub fn with_strict(mut self, h: Hyperplane) -> Self {
        self.strict.push(h);
        self
    }

    /// Adds the condition that `h` has the given sign.
    pub fn with_sign(self, h: &Hyperplane, s: Sign) -> Self {
        match s {
            Sign::Neg => self.with_strict(h.clone()),
            Sign::Zero => self.with_equality(h.clone()),
            Sign::Pos => self.with_strict(h.negated()),
        }
    }

    pub fn intersection(&self, other: &HPolyhedron) -> HPolyhedron {
        let mut out = self.clone();
        out.equalities.extend(other.equalities.iter().cloned());
        out.weak.extend(other.weak.iter().cloned());
        out.strict.extend(other.strict.iter().cloned());
        out
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equalities.iter().all(|h| h.eval(x).is_zero())
            && self.weak.iter().all(|h| !h.eval(x).is_positive())
            && self.strict.iter().all(|h| h.eval(x).is_negative())
    }

    /// The polyhedron with every weak inequality made strict. This is the
    /// relative interior when no weak inequality is an implicit equality.
    pub fn strict_interior(&self) -> HPolyhedron {
        let mut out = self.clone();
        out.strict.append(&mut out.weak);
        out
    }

    /// A point satisfying every constraint, strict ones strictly, chosen by a
    /// fixed rule: coordinates are zero when possible, otherwise the nearest
    /// integer to a one-sided bound or the midpoint of a bounded interval.
    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        let d = self.dim;
        let (x0, basis) = if self.equalities.is_empty() {
            let basis = (0..d)
                .map(|k| {
                    let mut e = vec![Rational::zero(); d];
                    e[k] = Rational::one();
                    e
                })
                .collect();
            (vec![Rational::zero(); d], basis)
        } else {
            let a: Vec<Vec<Rational>> = self.equalities.iter().map(|h| h.normal.clone()).collect();
            let b: Vec<Rational> = self.equalities.iter().map(|h| h.offset.clone()).collect();
            solve_affine(&a, &b, d)?
        };
        let k = basis.len();
        let mut ineqs = Vec::with_capacity(self.weak.len() + self.strict.len());
        for (h, strict) in self
            .weak
            .iter()
            .map(|h| (h, false))
            .chain(self.strict.iter().map(|h| (h, true)))
        {
            let coeffs: Vec<Rational> = basis.iter().map(|b| dot(&h.normal, b)).collect();
            let rhs = &h.offset - dot(&h.normal, &x0);
            ineqs.push(Ineq { coeffs, rhs, strict });
        }
        let y = fm_solve(ineqs, k)?;
        let mut x = x0;
        for (yj, b) in y.iter().zip(&basis) {
            if yj.is_zero() {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += yj * bi;
            }
        }
        debug_assert!(self.contains(&x));
        Some(x)
    }

    pub fn is_empty(&self) -> bool {
        self.feasible_point().is_none()
    }

    /// Exact projection forgetting the last coordinate.
    pub fn project_out_last(&self) -> HPolyhedron {
        let d = self.dim;
        assert!(d > 0, "cannot project a zero-dimensional polyhedron");
        let last = d - 1;
        let drop_last = |h: &Hyperplane| Hyperplane {
            normal: h.normal[..last].to_vec(),
            offset: h.offset.clone(),
        };
        if let Some(pos) = self.equalities.iter().position(|h| !h.normal[last].is_zero()) {
            let pivot = &self.equalities[pos];
            let eliminate = |h: &Hyperplane| -> Hyperplane {
                let f = &h.normal[last] / &pivot.normal[last];
                let normal: Vec<Rational> = h.normal[..last]
                    .iter()
                    .zip(&pivot.normal)
                    .map(|(a, b)| a - &f * b)
                    .collect();
                Hyperplane {
                    normal,
                    offset: &h.offset - &f * &pivot.offset,
                }
            };
            return HPolyhedron {
                dim: last,
                equalities: self
                    .equalities
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != pos)
                    .map(|(_, h)| eliminate(h))
                    .collect(),
                weak: self.weak.iter().map(eliminate).collect(),
                strict: self.strict.iter().map(eliminate).collect(),
            };
        }
        let mut out = HPolyhedron::universe(last);
        out.equalities = self.equalities.iter().map(drop_last).collect();
        let all: Vec<(&Hyperplane, bool)> = self
            .weak
            .iter()
            .map(|h| (h, false))
            .chain(self.strict.iter().map(|h| (h, true)))
            .collect();
        let mut push = |h: Hyperplane, strict: bool| {
            if strict {
                out.strict.push(h)
            } else {
                out.weak.push(h)
            }
        };
        for (h, s) in &all {
            if h.normal[last].is_zero() {
                push(drop_last(h), *s);
            }
        }
        for (hp, sp) in all.iter().filter(|(h, _)| h.normal[last].is_positive()) {
            for (hn, sn) in all.iter().filter(|(h, _)| h.normal[last].is_negative()) {
                let a = -hn.normal[last].clone();
                let b = hp.normal[last].clone();
                let normal: Vec<Rational> = hp.normal[..last]
                    .iter()
                    .zip(&hn.normal[..last])
                    .map(|(x, y)| x * &a + y * &b)
                    .collect();
                let offset = &hp.offset * &a + &hn.offset * &b;
                push(Hyperplane { normal, offset }, *sp || *sn);
            }
        }
        out
    }

    /// Canonical description of the relative interior: implicit equalities
    /// made explicit and reduced to echelon form, remaining constraints made
    /// strict, reduced modulo the equalities, scaled to primitive integer
    /// normals, deduplicated, stripped of redundant ones and sorted. Two
    /// relatively open polyhedra are equal iff their canonical forms are.
    /// Returns `None` for the empty set.
    pub fn canonical_relative_interior(&self) -> Option<HPolyhedron> {
        self.feasible_point()?;
        let d = self.dim;
        let mut eqs = self.equalities.clone();
        let mut rest: Vec<Hyperplane> = self.strict.clone();
        for h in &self.weak {
            let mut probe = self.clone();
            probe.weak.retain(|w| w != h);
            probe.strict.push(h.clone());
            if probe.is_empty() {
                eqs.push(h.clone());
            } else {
                rest.push(h.clone());
            }
        }
        let rows: Vec<Vec<Rational>> = eqs
            .iter()
            .map(|h| {
                let mut r = h.normal.clone();
                r.push(h.offset.clone());
                r
            })
            .collect();
        let (reduced, pivots) = rref(&rows, d + 1);
        let equalities: Vec<Hyperplane> = reduced
            .iter()
            .map(|r| Hyperplane::new(r[..d].to_vec(), r[d].clone()).primitive())
            .collect();
        let mut best: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
        for h in rest {
            let mut normal = h.normal.clone();
            let mut offset = h.offset.clone();
            for (row, &p) in reduced.iter().zip(&pivots) {
                let f = normal[p].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, y) in normal.iter_mut().zip(&row[..d]) {
                    *x -= &f * y;
                }
                offset -= &f * &row[d];
            }
            let h = Hyperplane::new(normal, offset);
            if h.is_degenerate() {
                continue;
            }
            let h = h.primitive();
            best.entry(h.normal)
                .and_modify(|o| {
                    if h.offset < *o {
                        *o = h.offset.clone()
                    }
                })
                .or_insert(h.offset);
        }
        let mut strict: Vec<Hyperplane> = best
            .into_iter()
            .map(|(normal, offset)| Hyperplane { normal, offset })
            .collect();
        let mut k = 0;
        while k < strict.len() {
            let mut probe = HPolyhedron::universe(d);
            probe.equalities = equalities.clone();
            probe.strict = strict
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, h)| h.clone())
                .collect();
            probe.weak.push(strict[k].negated());
            if probe.is_empty() {
                strict.remove(k);
            } else {
                k += 1;
            }
        }
        strict.sort();
        Some(HPolyhedron {
            dim: d,
            equalities,
            weak: Vec::new(),
            strict,
        })
    }

    /// Dimension of the affine hull of a relatively open polyhedron given
    /// by equalities and strict inequalities only.
    pub fn open_dim(&self) -> usize {
        let rows: Vec<Vec<Rational>> = self.equalities.iter().map(|h| h.normal.clone()).collect();
        self.dim - rank(&rows, self.dim)
    }

    pub fn to_json(&self) -> Value {
        let list = |hs: &[Hyperplane]| hs.iter().map(Hyperplane::to_json).collect::<Vec<_>>();
        json!({
            "dim": self.dim,
            "equalities": list(&self.equalities),
            "weak": list(&self.weak),
            "strict": list(&self.strict),
        })
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Drops trivially true constraints and merges parallel ones. `None` if a
/// constant constraint fails.
fn reduce(ineqs: Vec<Ineq>, nvars: usize) -> Option<Vec<Ineq>> {
    let mut best: BTreeMap<Vec<Rational>, (Rational, bool)> = BTreeMap::new();
    for q in ineqs {
        let Some(lead) = q.coeffs[..nvars].iter().find(|c| !c.is_zero()) else {
            let ok = if q.strict {
                q.rhs.is_positive()
            } else {
                !q.rhs.is_negative()
            };
            if !ok {
                return None;
            }
            continue;
        };
        let scale = lead.abs().recip();
        let key: Vec<Rational> = q.coeffs[..nvars].iter().map(|c| c * &scale).collect();
        let rhs = &q.rhs * &scale;
        match best.get_mut(&key) {
            Some((r, s)) => {
                if rhs < *r {
                    *r = rhs;
                    *s = q.strict;
                } else if rhs == *r {
                    *s |= q.strict;
                }
            }
            None => {
                best.insert(key, (rhs, q.strict));
            }
        }
    }
    Some(
        best.into_iter()
            .map(|(coeffs, (rhs, strict))| Ineq { coeffs, rhs, strict })
            .collect(),
    )
}

/// Fourier–Motzkin feasibility for `coeffs · y (<|<=) rhs` in `k` variables,
/// with back-substitution of a witness.
fn fm_solve(ineqs: Vec<Ineq>, k: usize) -> Option<Vec<Rational>> {
    let mut levels: Vec<Vec<Ineq>> = vec![Vec::new(); k + 1];
    levels[k] = reduce(ineqs, k)?;
    for m in (0..k).rev() {
        let sys = &levels[m + 1];
        let mut next = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for q in sys {
            match Sign::of(&q.coeffs[m]) {
                Sign::Zero => next.push(Ineq {
                    coeffs: q.coeffs[..m].to_vec(),
                    rhs: q.rhs.clone(),
                    strict: q.strict,
                }),
                Sign::Pos => pos.push(q),
                Sign::Neg => neg.push(q),
            }
        }
        for p in &pos {
            for n in &neg {
                let a = -n.coeffs[m].clone();
                let b = p.coeffs[m].clone();
                next.push(Ineq {
                    coeffs: (0..m).map(|i| &p.coeffs[i] * &a + &n.coeffs[i] * &b).collect(),
                    rhs: &p.rhs * &a + &n.rhs * &b,
                    strict: p.strict || n.strict,
                });
            }
        }
        levels[m] = reduce(next, m)?;
    }
    let mut y: Vec<Rational> = Vec::with_capacity(k);
    for m in 0..k {
        let mut lo: Option<(Rational, bool)> = None;
        let mut hi: Option<(Rational, bool)> = None;
        for q in &levels[m + 1] {
            let a = &q.coeffs[m];
            if a.is_zero() {
                continue;
            }
            let mut r = q.rhs.clone();
            for (c, v) in q.coeffs[..m].iter().zip(&y) {
                r -= c * v;
            }
            let bound = r / a;
            if a.is_positive() {
                if hi
                    .as_ref()
                    .is_none_or(|(h, s)| bound < *h || (bound == *h && q.strict && !s))
                {
                    hi = Some((bound, q.strict));
                }
            } else if lo
                .as_ref()
                .is_none_or(|(l, s)| bound > *l || (bound == *l && q.strict && !s))
            {
                lo = Some((bound, q.strict));
            }
        }
        y.push(pick(lo, hi));
    }
    Some(y)
}

fn satisfies(x: &Rational, lo: &Option<(Rational, bool)>, hi: &Option<(Rational, bool)>) -> bool {
    let lo_ok = lo.as_ref().is_none_or(|(l, s)| if *s { x > l } else { x >= l });
    let hi_ok = hi.as_ref().is_none_or(|(h, s)| if *s { x < h } else { x <= h });
    lo_ok && hi_ok
}

fn pick(lo: Option<(Rational, bool)>, hi: Option<(Rational, bool)>) -> Rational {
    let zero = Rational::zero();
    if satisfies(&zero, &lo, &hi) {
        return zero;
    }
    match (&lo, &hi) {
        (Some((l, s)), None) => {
            if *s {
                l.floor() + Rational::one()
            } else {
                l.ceil()
            }
        }
        (None, Some((h, s))) => {
            if *s {
                h.ceil() - Rational::one()
            } else {
                h.floor()
            }
        }
        (Some((l, _)), Some((h, _))) => {
            if l == h {
                l.clone()
            } else {
                (l + h) / Rational::from_integer(2.into())
            }
        }
        (None, None) => zero,
    }
}

/// A relatively open face of an arrangement, with a sample point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub signs: Vec<Sign>,
    pub dim: usize,
    pub sample: Vec<Rational>,
    /// The hyperplanes containing the face.
    pub hull: Vec<Hyperplane>,
}

impl Face {
    /// The face as an H-polyhedron inside the given domain.
    pub fn polyhedron(&self, domain: &HPolyhedron, planes: &[Hyperplane]) -> HPolyhedron {
        planes
            .iter()
            .zip(&self.signs)
            .fold(domain.clone(), |p, (h, s)| p.with_sign(h, *s))
    }

    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|s| s.symbol()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "signs": self.sign_string(),
            "dim": self.dim,
            "sample": render_point(&self.sample),
            "hull": self.hull.iter().map(Hyperplane::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Every nonempty face of the arrangement in `R^d`, sorted by dimension and
/// then sign vector.
pub fn arrangement_faces(planes: &[Hyperplane], d: usize) -> Vec<Face> {
    arrangement_faces_in(&HPolyhedron::universe(d), planes)
}

/// Faces of the arrangement restricted to a relatively open domain given by
/// equalities and strict inequalities.
pub fn arrangement_faces_in(domain: &HPolyhedron, planes: &[Hyperplane]) -> Vec<Face> {
    let Some(start) = domain.feasible_point() else {
        return Vec::new();
    };
    let mut partial: Vec<(Vec<Sign>, HPolyhedron, Vec<Rational>)> = vec![(Vec::new(), domain.clone(), start)];
    for h in planes {
        let mut next = Vec::with_capacity(partial.len() * 2);
        for (signs, poly, sample) in partial {
            let current = h.sign(&sample);
            for s in [Sign::Neg, Sign::Zero, Sign::Pos] {
                let child = poly.clone().with_sign(h, s);
                let point = if s == current {
                    Some(sample.clone())
                } else {
                    child.feasible_point()
                };
                if let Some(p) = point {
                    let mut sv = signs.clone();
                    sv.push(s);
                    next.push((sv, child, p));
                }
            }
        }
        partial = next;
    }
    let mut faces: Vec<Face> = partial
        .into_iter()
        .map(|(signs, poly, sample)| {
            let hull: Vec<Hyperplane> = planes
                .iter()
                .zip(&signs)
                .filter(|(_, s)| **s == Sign::Zero)
                .map(|(h, _)| h.clone())
                .collect();
            Face {
                dim: poly.open_dim(),
                signs,
                sample,
                hull,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.signs).cmp(&(b.dim, &b.signs)));
    faces
}

/// The distinct loci `v_i = v_j` where two terms of `f` take equal values.
pub fn pairwise_hyperplanes(f: &TropPoly) -> Vec<Hyperplane> {
    let pts = f.support().points();
    let mut set = BTreeSet::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let normal: Vec<Rational> = pts[i]
                .iter()
                .zip(&pts[j])
                .map(|(a, b)| Rational::from_integer((a - b).into()))
                .collect();
            let h = Hyperplane::new(normal, f.coeff(j) - f.coeff(i));
            if let Some(c) = h.canonical() {
                set.insert(c);
            }
        }
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::gallery;
    use proptest::prelude::*;

    fn line(a: i64, b: i64, c: i64) -> Hyperplane {
        Hyperplane::from_ints(&[a, b], c)
    }

    #[test]
    fn open_interval() {
        let p = HPolyhedron::universe(1)
            .with_strict(Hyperplane::from_ints(&[-1], 0))
            .with_strict(Hyperplane::from_ints(&[1], 1))
            .with_strict(Hyperplane::from_ints(&[-1], -1));
        assert!(p.is_empty());
        let p = HPolyhedron::universe(1)
            .with_strict(Hyperplane::from_ints(&[-1], -1))
            .with_strict(Hyperplane::from_ints(&[1], 2));
        assert_eq!(p.feasible_point(), Some(vec![ratio(3, 2)]));
        let p = HPolyhedron::universe(1)
            .with_strict(Hyperplane::from_ints(&[-1], 0))
            .with_strict(Hyperplane::from_ints(&[1], 1));
        assert_eq!(p.feasible_point(), Some(vec![ratio(1, 2)]));
    }

    #[test]
    fn equality_with_halfspace() {
        let p = HPolyhedron::universe(2)
            .with_equality(line(1, -1, 0))
            .with_weak(line(-1, 0, -1));
        let x = p.feasible_point().unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
    }

    #[test]
    fn contradictory_strict_pair() {
        let p = HPolyhedron::universe(1)
            .with_strict(Hyperplane::from_ints(&[-1], 0))
            .with_strict(Hyperplane::from_ints(&[1], 0));
        assert!(p.feasible_point().is_none());
        let closed = HPolyhedron::universe(1)
            .with_weak(Hyperplane::from_ints(&[-1], 0))
            .with_weak(Hyperplane::from_ints(&[1], 0));
        assert_eq!(closed.feasible_point(), Some(vec![rat(0)]));
    }

    #[test]
    fn face_counts() {
        assert_eq!(arrangement_faces(&[line(1, 0, 0)], 2).len(), 3);
        let faces = arrangement_faces(&[line(1, 0, 0), line(0, 1, 0)], 2);
        assert_eq!(faces.len(), 9);
        assert_eq!(faces.iter().filter(|f| f.dim == 0).count(), 1);
        assert_eq!(faces.iter().filter(|f| f.dim == 1).count(), 4);
        assert_eq!(faces.iter().filter(|f| f.dim == 2).count(), 4);
    }

    #[test]
    fn pairwise_arrangement_of_two_point_curve() {
        let f = gallery::two_point_singular_curve();
        let planes = pairwise_hyperplanes(&f);
        assert!(planes.len() <= 15);
        assert!(planes.contains(&line(1, 1, 0)));
        assert!(planes.contains(&line(1, -2, 6)));
        let faces = arrangement_faces(&planes, 2);
        assert!(faces
            .iter()
            .any(|face| face.dim == 0 && face.sample == vec![rat(2), rat(-2)]));
    }

    #[test]
    fn univariate_pairwise_hyperplane() {
        let f = TropPoly::from_ints(1, &[(&[0], 0), (&[1], 0)]).unwrap();
        assert_eq!(pairwise_hyperplanes(&f), vec![Hyperplane::from_ints(&[1], 0)]);
    }

    #[test]
    fn projection_of_triangle() {
        // 0 < y < x < 1 projects onto 0 < x < 1.
        let p = HPolyhedron::universe(2)
            .with_strict(line(0, -1, 0))
            .with_strict(line(-1, 1, 0))
            .with_strict(line(1, 0, 1));
        let q = p.project_out_last().canonical_relative_interior().unwrap();
        let expected = HPolyhedron::universe(1)
            .with_strict(Hyperplane::from_ints(&[-1], 0))
            .with_strict(Hyperplane::from_ints(&[1], 1))
            .canonical_relative_interior()
            .unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn projection_along_equality() {
        // y = x + 1, 0 < y < 2 projects onto -1 < x < 1.
        let p = HPolyhedron::universe(2)
            .with_equality(line(-1, 1, 1))
            .with_strict(line(0, -1, 0))
            .with_strict(line(0, 1, 2));
        let q = p.project_out_last();
        assert!(q.contains(&[rat(0)]));
        assert!(q.contains(&[ratio(-1, 2)]));
        assert!(!q.contains(&[rat(1)]));
    }

    #[test]
    fn canonical_form_detects_implicit_equalities_and_redundancy() {
        let a = HPolyhedron::universe(2)
            .with_weak(line(1, 0, 0))
            .with_weak(line(-1, 0, 0))
            .with_weak(line(0, -1, 0))
            .with_weak(line(0, -2, 2));
        let b = HPolyhedron::universe(2)
            .with_equality(line(2, 0, 0))
            .with_strict(line(0, -3, 0));
        assert_eq!(a.canonical_relative_interior(), b.canonical_relative_interior());
        let c = b.canonical_relative_interior().unwrap();
        assert_eq!(c.open_dim(), 1);
        assert_eq!(c.strict.len(), 1);
    }

    fn small_line() -> impl Strategy<Value = Hyperplane> {
        (-3i64..4, -3i64..4, -4i64..5)
            .prop_filter("nonzero normal", |(a, b, _)| *a != 0 || *b != 0)
            .prop_map(|(a, b, c)| line(a, b, c).canonical().unwrap())
    }

    fn arrangement() -> impl Strategy<Value = Vec<Hyperplane>> {
        proptest::collection::btree_set(small_line(), 1..5).prop_map(|s| s.into_iter().collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn samples_reproduce_sign_vectors(planes in arrangement()) {
            for face in arrangement_faces(&planes, 2) {
                let signs: Vec<Sign> = planes.iter().map(|h| h.sign(&face.sample)).collect();
                prop_assert_eq!(signs, face.signs.clone());
            }
        }

        #[test]
        fn face_count_matches_brute_force(planes in arrangement()) {
            let faces = arrangement_faces(&planes, 2);
            let mut brute = 0;
            let m = planes.len();
            for code in 0..3usize.pow(m as u32) {
                let mut c = code;
                let mut poly = HPolyhedron::universe(2);
                for h in &planes {
                    let s = [Sign::Neg, Sign::Zero, Sign::Pos][c % 3];
                    c /= 3;
                    poly = poly.with_sign(h, s);
                }
                if poly.feasible_point().is_some() {
                    brute += 1;
                }
            }
            prop_assert_eq!(faces.len(), brute);
        }

        #[test]
        fn random_points_lie_in_exactly_one_face(
            planes in arrangement(),
            pts in proptest::collection::vec((-12i64..13, 1i64..4, -12i64..13, 1i64..4), 10),
        ) {
            let faces = arrangement_faces(&planes, 2);
            for (a, b, c, d) in pts {
                let x = vec![ratio(a, b), ratio(c, d)];
                let hits = faces
                    .iter()
                    .filter(|f| f.polyhedron(&HPolyhedron::universe(2), &planes).contains(&x))
                    .count();
                prop_assert_eq!(hits, 1);
            }
        }

        #[test]
        fn feasible_points_satisfy_constraints(
            raw in proptest::collection::vec((-3i64..4, -3i64..4, -3i64..4, -4i64..5, 0u8..3), 1..6)
        ) {
            let mut p = HPolyhedron::universe(3);
            for (a, b, c, o, kind) in raw {
                let h = Hyperplane::from_ints(&[a, b, c], o);
                p = match kind {
                    0 => p.with_weak(h),
                    1 => p.with_strict(h),
                    _ => p.with_equality(h),
                };
            }
            if let Some(x) = p.feasible_point() {
                prop_assert!(p.contains(&x));
            }
        }
    }
}
