//! Singular points of tropical hypersurfaces: point tests, flags, the full
//! singular locus and the planar and univariate classifications.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{render_point, Rational};
use crate::error::{Error, Result};
use crate::linalg::solve_affine;
use crate::poly::TropPoly;
use crate::polyhedral::{arrangement_faces_in, HPolyhedron, Hyperplane, Sign};
use crate::subdivision::{complex, subdivision, DualCell, MarkedCell};
use crate::support::{
    circuits_of, combinations, hyperplane_through, is_pyramid, spanning_forms, AffineForm, LatticePoint,
};

/// Ordered partition of the support by increasing value `p_i + <i, q>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub blocks: Vec<Vec<usize>>,
}

impl Flag {
    /// The chain `F_0 ⊊ F_1 ⊊ … ⊊ A` of cumulative unions.
    pub fn chain(&self) -> Vec<Vec<usize>> {
        let mut acc: Vec<usize> = Vec::new();
        self.blocks
            .iter()
            .map(|b| {
                acc.extend(b);
                acc.sort_unstable();
                acc.clone()
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!(self.chain())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularityVerdict {
    Singular(Flag),
    /// Some derivative attains its minimum only once at the point.
    Regular {
        witness: AffineForm,
    },
    NotOnHypersurface,
}

impl SingularityVerdict {
    pub fn is_singular(&self) -> bool {
        matches!(self, SingularityVerdict::Singular(_))
    }

    pub fn status(&self) -> &'static str {
        match self {
            SingularityVerdict::Singular(_) => "singular",
            SingularityVerdict::Regular { .. } => "regular",
            SingularityVerdict::NotOnHypersurface => "off_hypersurface",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SingularityVerdict::Singular(flag) => json!({"status": self.status(), "flag": flag.to_json()}),
            SingularityVerdict::Regular { witness } => json!({"status": self.status(), "witness": witness}),
            SingularityVerdict::NotOnHypersurface => json!({"status": self.status()}),
        }
    }
}

/// Precomputed spanning forms of a polynomial's support, reusable across
/// many point queries.
#[derive(Clone, Debug)]
pub struct SingularityTester<'a> {
    f: &'a TropPoly,
    forms: Vec<AffineForm>,
    nonzero: Vec<Vec<usize>>,
    vanishes: Vec<Vec<bool>>,
}

impl<'a> SingularityTester<'a> {
    pub fn new(f: &'a TropPoly) -> Result<Self> {
        let forms = spanning_forms(f.support())?;
        let vanishes: Vec<Vec<bool>> = forms
            .iter()
            .map(|l| f.support().points().iter().map(|p| l.eval(p) == 0).collect())
            .collect();
        let nonzero = vanishes
            .iter()
            .map(|z| (0..z.len()).filter(|&i| !z[i]).collect())
            .collect();
        Ok(SingularityTester {
            f,
            forms,
            nonzero,
            vanishes,
        })
    }

    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    /// Dense ranks of the term values; equal values share a rank.
    fn ranks(&self, q: &[Rational]) -> Result<Vec<usize>> {
        Ok(dense_ranks(&self.f.values(q)?))
    }

    fn unique_min(&self, k: usize, ranks: &[usize]) -> bool {
        let mut best = usize::MAX;
        let mut count = 0;
        for &i in &self.nonzero[k] {
            match ranks[i].cmp(&best) {
                std::cmp::Ordering::Less => {
                    best = ranks[i];
                    count = 1;
                }
                std::cmp::Ordering::Equal => count += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
        count == 1
    }

    fn first_witness(&self, ranks: &[usize], candidates: impl Iterator<Item = usize>) -> Option<AffineForm> {
        candidates
            .into_iter()
            .find(|&k| self.unique_min(k, ranks))
            .map(|k| self.forms[k].clone())
    }

    fn verdict_from(&self, ranks: Vec<usize>, witness: Option<AffineForm>) -> SingularityVerdict {
        match witness {
            Some(witness) => SingularityVerdict::Regular { witness },
            None => SingularityVerdict::Singular(flag_from_ranks(&ranks)),
        }
    }

    /// Direct test: every spanning form's derivative must attain its minimum
    /// at least twice.
    pub fn test_all_forms(&self, q: &[Rational]) -> Result<SingularityVerdict> {
        let ranks = self.ranks(q)?;
        if ranks.iter().filter(|&&r| r == 0).count() < 2 {
            return Ok(SingularityVerdict::NotOnHypersurface);
        }
        let w = self.first_witness(&ranks, 0..self.forms.len());
        Ok(self.verdict_from(ranks, w))
    }

    /// Accelerated test: a pyramid marking is regular; otherwise only forms
    /// vanishing on the whole marking can fail.
    pub fn test(&self, q: &[Rational]) -> Result<SingularityVerdict> {
        let ranks = self.ranks(q)?;
        let marking: Vec<usize> = (0..ranks.len()).filter(|&i| ranks[i] == 0).collect();
        if marking.len() < 2 {
            return Ok(SingularityVerdict::NotOnHypersurface);
        }
        let pts: Vec<LatticePoint> = marking.iter().map(|&i| self.f.support().point(i).to_vec()).collect();
        let w = if is_pyramid(&pts).is_some() {
            self.first_witness(&ranks, 0..self.forms.len())
        } else {
            let containing = (0..self.forms.len()).filter(|&k| marking.iter().all(|&i| self.vanishes[k][i]));
            self.first_witness(&ranks, containing)
        };
        Ok(self.verdict_from(ranks, w))
    }

    /// Pairs of terms whose relative order can change a verdict inside the
    /// dual cell of a non-pyramid marking.
    fn refining_pairs(&self, marking: &[usize]) -> BTreeSet<(usize, usize)> {
        let outside = |i: &usize| marking.binary_search(i).is_err();
        let mut pairs = BTreeSet::new();
        for k in 0..self.forms.len() {
            if !marking.iter().all(|&i| self.vanishes[k][i]) {
                continue;
            }
            let free: Vec<usize> = self.nonzero[k].iter().copied().filter(outside).collect();
            for (a, &i) in free.iter().enumerate() {
                for &j in &free[a + 1..] {
                    pairs.insert((i, j));
                }
            }
        }
        pairs
    }
}

fn dense_ranks(values: &[Rational]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].cmp(&values[b]));
    let mut ranks = vec![0; values.len()];
    let mut r = 0;
    for w in 0..order.len() {
        if w > 0 && values[order[w]] != values[order[w - 1]] {
            r += 1;
        }
        ranks[order[w]] = r;
    }
    ranks
}

fn flag_from_ranks(ranks: &[usize]) -> Flag {
    let top = ranks.iter().copied().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); top];
    for (i, &r) in ranks.iter().enumerate() {
        blocks[r].push(i);
    }
    Flag { blocks }
}

/// Decides whether `q` is a singular point of `T(f)`. Works in any dimension.
pub fn is_singular_point(f: &TropPoly, q: &[Rational]) -> Result<SingularityVerdict> {
    SingularityTester::new(f)?.test(q)
}

/// The same decision using every spanning form, without the pyramid
/// shortcut.
pub fn is_singular_point_full(f: &TropPoly, q: &[Rational]) -> Result<SingularityVerdict> {
    SingularityTester::new(f)?.test_all_forms(q)
}

/// The flag of `f` at `q`.
pub fn flag(f: &TropPoly, q: &[Rational]) -> Result<Flag> {
    Ok(flag_from_ranks(&dense_ranks(&f.values(q)?)))
}

/// A relatively open piece of `T(f)` on which the verdict is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusFace {
    pub marking: Vec<usize>,
    pub dim: usize,
    pub sample: Vec<Rational>,
    pub polyhedron: HPolyhedron,
    pub verdict: SingularityVerdict,
}

impl LocusFace {
    pub fn to_json(&self) -> Value {
        json!({
            "marking": self.marking,
            "dim": self.dim,
            "sample": render_point(&self.sample),
            "equalities": self.polyhedron.equalities.iter().map(Hyperplane::to_json).collect::<Vec<_>>(),
            "strict": self.polyhedron.strict.iter().map(Hyperplane::to_json).collect::<Vec<_>>(),
            "verdict": self.verdict.to_json(),
        })
    }
}

/// A decomposition of `T(f)` into relatively open faces with their verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocus {
    pub dim: usize,
    pub faces: Vec<LocusFace>,
}

impl SingularLocus {
    pub fn singular_faces(&self) -> impl Iterator<Item = &LocusFace> {
        self.faces.iter().filter(|f| f.verdict.is_singular())
    }

    pub fn is_empty(&self) -> bool {
        self.singular_faces().next().is_none()
    }

    pub fn contains(&self, q: &[Rational]) -> bool {
        self.singular_faces().any(|f| f.polyhedron.contains(q))
    }

    /// Singular faces with collinear neighbouring pieces merged into
    /// maximal segments, for display.
    pub fn merged(&self) -> Vec<Piece> {
        merge_pieces(self.singular_faces().map(|f| &f.polyhedron).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "singular_faces": self.singular_faces().map(LocusFace::to_json).collect::<Vec<_>>(),
            "merged": self.merged().iter().map(Piece::to_json).collect::<Vec<_>>(),
            "face_count": self.faces.len(),
        })
    }
}

/// Every face of `T(f)` with its verdict; the union of the singular faces
/// is exactly the singular set. Requires `d <= 3`.
pub fn singular_locus(f: &TropPoly) -> Result<SingularLocus> {
    let d = f.dim();
    if d > 3 {
        return Err(Error::UnsupportedDimension {
            operation: "singular_locus",
            dim: d,
            max: 3,
        });
    }
    let tester = SingularityTester::new(f)?;
    let cells = complex(f)?;
    let per_cell: Vec<Result<Vec<LocusFace>>> = cells.par_iter().map(|cell| cell_faces(f, &tester, cell)).collect();
    let mut faces = Vec::new();
    for r in per_cell {
        faces.extend(r?);
    }
    faces.sort_by(|a, b| (a.dim, &a.marking, &a.sample).cmp(&(b.dim, &b.marking, &b.sample)));
    Ok(SingularLocus { dim: d, faces })
}

fn cell_faces(f: &TropPoly, tester: &SingularityTester, cell: &DualCell) -> Result<Vec<LocusFace>> {
    let domain = cell.relative_interior();
    let pts: Vec<LatticePoint> = cell.marking.iter().map(|&i| f.support().point(i).to_vec()).collect();
    let planes: Vec<Hyperplane> = if is_pyramid(&pts).is_some() {
        Vec::new()
    } else {
        let set: BTreeSet<Hyperplane> = tester
            .refining_pairs(&cell.marking)
            .into_iter()
            .filter_map(|(i, j)| equal_value_plane(f, i, j).canonical())
            .collect();
        set.into_iter().collect()
    };
    let mut out = Vec::new();
    for face in arrangement_faces_in(&domain, &planes) {
        let poly = face.polyhedron(&domain, &planes);
        let verdict = tester.test(&face.sample)?;
        out.push(LocusFace {
            marking: cell.marking.clone(),
            dim: face.dim,
            polyhedron: poly.canonical_relative_interior().expect("face is nonempty"),
            sample: face.sample,
            verdict,
        });
    }
    Ok(out)
}

/// The hyperplane `v_i = v_j`, oriented so that `h <= 0` means `v_i <= v_j`.
pub fn equal_value_plane(f: &TropPoly, i: usize, j: usize) -> Hyperplane {
    let normal = f
        .support()
        .point(i)
        .iter()
        .zip(f.support().point(j))
        .map(|(a, b)| Rational::from_integer((a - b).into()))
        .collect();
    Hyperplane::new(normal, f.coeff(j) - f.coeff(i))
}

/// A convex union of singular faces: a point, or a segment, ray or line
/// given by its affine hull and optional endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    Point(Vec<Rational>),
    Segment {
        equalities: Vec<Hyperplane>,
        /// `(point, included)` at each end, `None` when unbounded.
        start: Option<(Vec<Rational>, bool)>,
        end: Option<(Vec<Rational>, bool)>,
    },
    Other(HPolyhedron),
}

impl Piece {
    pub fn to_json(&self) -> Value {
        let end = |e: &Option<(Vec<Rational>, bool)>| match e {
            Some((p, closed)) => json!({"point": render_point(p), "closed": closed}),
            None => Value::Null,
        };
        match self {
            Piece::Point(p) => json!({"kind": "point", "point": render_point(p)}),
            Piece::Segment {
                equalities,
                start,
                end: stop,
            } => json!({
                "kind": "segment",
                "equalities": equalities.iter().map(Hyperplane::to_json).collect::<Vec<_>>(),
                "start": end(start),
                "end": end(stop),
            }),
            Piece::Other(p) => json!({"kind": "polyhedron", "polyhedron": p.to_json()}),
        }
    }
}

/// Bound on the line parameter: `None` is unbounded.
type Bound = Option<Rational>;

struct Interval {
    lo: Bound,
    hi: Bound,
    lo_closed: bool,
    hi_closed: bool,
}

/// Equalities, base point, direction and parameter intervals of one line.
type Line = (Vec<Hyperplane>, Vec<Rational>, Vec<Rational>, Vec<Interval>);

pub(crate) fn merge_pieces(polys: Vec<&HPolyhedron>) -> Vec<Piece> {
    let mut pieces = Vec::new();
    let mut points: Vec<Vec<Rational>> = Vec::new();
    let mut lines: Vec<Line> = Vec::new();
    for p in polys {
        let d = p.dim;
        match p.open_dim() {
            0 => points.push(p.feasible_point().expect("nonempty face")),
            1 => {
                let a: Vec<Vec<Rational>> = p.equalities.iter().map(|h| h.normal.clone()).collect();
                let b: Vec<Rational> = p.equalities.iter().map(|h| h.offset.clone()).collect();
                let (x0, basis) = solve_affine(&a, &b, d).expect("consistent equalities");
                let u = basis[0].clone();
                let mut iv = Interval {
                    lo: None,
                    hi: None,
                    lo_closed: false,
                    hi_closed: false,
                };
                for h in &p.strict {
                    let s = dot(&h.normal, &u);
                    let r = &h.offset - dot(&h.normal, &x0);
                    if s.is_zero() {
                        continue;
                    }
                    let t = r / &s;
                    if s.is_positive() {
                        if iv.hi.as_ref().is_none_or(|h| t < *h) {
                            iv.hi = Some(t);
                        }
                    } else if iv.lo.as_ref().is_none_or(|l| t > *l) {
                        iv.lo = Some(t);
                    }
                }
                match lines.iter_mut().find(|(eq, ..)| *eq == p.equalities) {
                    Some(entry) => {
                        // Re-express in the stored parametrization.
                        let (_, y0, v, ivs) = entry;
                        let to_param = |t: &Rational| param_of(&point_at(&x0, &u, t), y0, v);
                        let mut lo = iv.lo.as_ref().map(to_param);
                        let mut hi = iv.hi.as_ref().map(to_param);
                        let flipped = param_of(&point_at(&x0, &u, &Rational::one()), y0, v) < param_of(&x0, y0, v);
                        if flipped {
                            std::mem::swap(&mut lo, &mut hi);
                        }
                        ivs.push(Interval {
                            lo,
                            hi,
                            lo_closed: false,
                            hi_closed: false,
                        });
                    }
                    None => lines.push((p.equalities.clone(), x0, u, vec![iv])),
                }
            }
            _ => pieces.push(Piece::Other(p.clone())),
        }
    }
    let mut used = vec![false; points.len()];
    for (eqs, x0, u, mut ivs) in lines {
        for (k, pt) in points.iter().enumerate() {
            if eqs.iter().all(|h| h.eval(pt).is_zero()) {
                let t = param_of(pt, &x0, &u);
                let mut touched = false;
                for iv in ivs.iter_mut() {
                    if iv.lo.as_ref() == Some(&t) {
                        iv.lo_closed = true;
                        touched = true;
                    }
                    if iv.hi.as_ref() == Some(&t) {
                        iv.hi_closed = true;
                        touched = true;
                    }
                }
                used[k] |= touched;
            }
        }
        ivs.sort_by(|a, b| cmp_lo(&a.lo, &b.lo));
        let mut merged: Vec<Interval> = Vec::new();
        for iv in ivs {
            if let Some(last) = merged.last_mut() {
                if last.hi.is_some() && last.hi == iv.lo && (last.hi_closed || iv.lo_closed) {
                    last.hi = iv.hi;
                    last.hi_closed = iv.hi_closed;
                    continue;
                }
            }
            merged.push(iv);
        }
        for iv in merged {
            let endpoint = |t: &Bound, closed: bool| t.as_ref().map(|t| (point_at(&x0, &u, t), closed));
            pieces.push(Piece::Segment {
                equalities: eqs.clone(),
                start: endpoint(&iv.lo, iv.lo_closed),
                end: endpoint(&iv.hi, iv.hi_closed),
            });
        }
    }
    for (k, pt) in points.into_iter().enumerate() {
        if !used[k] {
            pieces.push(Piece::Point(pt));
        }
    }
    pieces
}

fn cmp_lo(a: &Bound, b: &Bound) -> std::cmp::Ordering {
    match (a, b) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, _) => std::cmp::Ordering::Less,
        (_, None) => std::cmp::Ordering::Greater,
        (Some(x), Some(y)) => x.cmp(y),
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn point_at(x0: &[Rational], u: &[Rational], t: &Rational) -> Vec<Rational> {
    x0.iter().zip(u).map(|(a, b)| a + b * t).collect()
}

/// Parameter of a point on the line `x0 + t u`.
fn param_of(p: &[Rational], x0: &[Rational], u: &[Rational]) -> Rational {
    let k = u.iter().position(|x| !x.is_zero()).expect("nonzero direction");
    (&p[k] - &x0[k]) / &u[k]
}

/// The singular point guaranteed on the edge dual to `σ' ∖ {i1}` when the top
/// cell `σ'` is a pyramid over `i1` whose base contains a circuit of
/// dimension `d - 1`. `None` when no other point lies on the apex side of
/// the base hyperplane closer than the apex.
pub fn circuit_pyramid_criterion(f: &TropPoly, sigma_prime: &MarkedCell) -> Result<Option<Vec<Rational>>> {
    let support = f.support();
    let d = f.dim();
    let sub = subdivision(f)?;
    let (_, lifting) = sub
        .top
        .iter()
        .find(|(c, _)| c.marking == sigma_prime.marking)
        .ok_or_else(|| Error::Precondition("cell is not a maximal cell of the subdivision".into()))?;
    let marking = &sigma_prime.marking;
    let pts: Vec<LatticePoint> = marking.iter().map(|&i| support.point(i).to_vec()).collect();
    let mut found = None;
    for a in 0..pts.len() {
        let rest: Vec<LatticePoint> = pts
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != a)
            .map(|(_, p)| p.clone())
            .collect();
        let rest_dim = crate::support::affine_dim(&rest)?;
        if rest_dim + 1 != d {
            continue;
        }
        if circuits_of(&rest).iter().any(|c| c.dim + 1 == d) {
            found = Some((a, rest));
            break;
        }
    }
    let (apex_pos, base) = found.ok_or_else(|| {
        Error::Precondition("cell is not a pyramid over a base containing a circuit of codimension one".into())
    })?;
    let apex = marking[apex_pos];
    let mut form = None;
    let mut buf = Vec::new();
    combinations(base.len(), d, &mut buf, 0, &mut |s| {
        if form.is_none() {
            let refs: Vec<&[i64]> = s.iter().map(|&k| base[k].as_slice()).collect();
            form = hyperplane_through(&refs);
        }
    });
    let mut form = form.expect("base spans a hyperplane");
    if form.eval(support.point(apex)) < 0 {
        form = form.negated();
    }
    let l_apex = form.eval(support.point(apex));
    let mut best: Option<Rational> = None;
    for k in 0..support.len() {
        if sigma_prime.contains(k) {
            continue;
        }
        let lk = form.eval(support.point(k));
        if lk >= l_apex {
            continue;
        }
        let reduced = f.coeff(k) - lifting.eval(support.point(k));
        let s = reduced / Rational::from_integer((l_apex - lk).into());
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    }
    Ok(best.map(|s| {
        lifting
            .dual_vertex()
            .iter()
            .zip(&form.j)
            .map(|(v, &j)| v + &s * Rational::from_integer(j.into()))
            .collect()
    }))
}

/// A marked edge with at least three points and the outcome of intersecting
/// its closed dual segment with the derivative along its line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeReport {
    pub marking: Vec<usize>,
    pub form: AffineForm,
    /// A point of `σ* ∩ T(∂f/∂L)`, if any.
    pub meeting_point: Option<Vec<Rational>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanarCase {
    Triangulation,
    /// Some cell contains a circuit of dimension two.
    CircuitOfDimensionTwo,
    /// Every circuit inside a cell is one-dimensional.
    CollinearCircuits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarReport {
    pub case: PlanarCase,
    pub circuit_cells: Vec<Vec<usize>>,
    pub edges: Vec<EdgeReport>,
    pub singular: bool,
}

impl PlanarReport {
    pub fn to_json(&self) -> Value {
        let case = match self.case {
            PlanarCase::Triangulation => "triangulation",
            PlanarCase::CircuitOfDimensionTwo => "circuit_of_dimension_two",
            PlanarCase::CollinearCircuits => "collinear_circuits",
        };
        json!({
            "triangulation": self.case == PlanarCase::Triangulation,
            "case": case,
            "circuit_cells": self.circuit_cells,
            "edges": self.edges.iter().map(|e| json!({
                "marking": e.marking,
                "form": e.form,
                "meets_derivative": e.meeting_point.is_some(),
                "point": e.meeting_point.as_ref().map(|p| render_point(p)),
            })).collect::<Vec<_>>(),
            "singular": self.singular,
        })
    }
}

/// Classification of a plane curve by the circuits inside its marked cells.
pub fn classify_planar(f: &TropPoly) -> Result<PlanarReport> {
    if f.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: f.dim(),
        });
    }
    let support = f.support();
    let sub = subdivision(f)?;
    let mut circuit_cells = Vec::new();
    let mut edges = Vec::new();
    for cell in &sub.cells {
        let pts = cell.points(support);
        if cell.dim == 2 && circuits_of(&pts).iter().any(|c| c.dim == 2) {
            circuit_cells.push(cell.marking.clone());
        }
        if cell.dim == 1 && cell.marking.len() >= 3 {
            let form = hyperplane_through(&[&pts[0], &pts[1]]).expect("distinct points span a line");
            let dual = DualCell::new(f, cell.marking.clone());
            let meeting_point = meet_on_segment(f, &dual.closed, &f.derivative_indices(&form));
            edges.push(EdgeReport {
                marking: cell.marking.clone(),
                form,
                meeting_point,
            });
        }
    }
    let case = if sub.is_triangulation() {
        PlanarCase::Triangulation
    } else if !circuit_cells.is_empty() {
        PlanarCase::CircuitOfDimensionTwo
    } else {
        PlanarCase::CollinearCircuits
    };
    let singular = !circuit_cells.is_empty() || edges.iter().any(|e| e.meeting_point.is_some());
    Ok(PlanarReport {
        case,
        circuit_cells,
        edges,
        singular,
    })
}

/// A point of the closed one-dimensional polyhedron where the minimum over
/// the given terms is attained at least twice.
fn meet_on_segment(f: &TropPoly, closed: &HPolyhedron, terms: &[usize]) -> Option<Vec<Rational>> {
    let d = closed.dim;
    let a: Vec<Vec<Rational>> = closed.equalities.iter().map(|h| h.normal.clone()).collect();
    let b: Vec<Rational> = closed.equalities.iter().map(|h| h.offset.clone()).collect();
    let (x0, basis) = solve_affine(&a, &b, d)?;
    debug_assert_eq!(basis.len(), 1);
    let u = &basis[0];
    let (mut lo, mut hi): (Bound, Bound) = (None, None);
    for h in &closed.weak {
        let s = dot(&h.normal, u);
        let r = &h.offset - dot(&h.normal, &x0);
        match Sign::of(&s) {
            Sign::Pos => {
                let t = r / s;
                if hi.as_ref().is_none_or(|h| t < *h) {
                    hi = Some(t);
                }
            }
            Sign::Neg => {
                let t = r / s;
                if lo.as_ref().is_none_or(|l| t > *l) {
                    lo = Some(t);
                }
            }
            Sign::Zero => {}
        }
    }
    // Term values along the line are c + s t.
    let lines: Vec<(Rational, Rational)> = terms
        .iter()
        .map(|&k| {
            let p: Vec<Rational> = f
                .support()
                .point(k)
                .iter()
                .map(|&e| Rational::from_integer(e.into()))
                .collect();
            (f.coeff(k) + dot(&p, &x0), dot(&p, u))
        })
        .collect();
    let within = |t: &Rational| lo.as_ref().is_none_or(|l| t >= l) && hi.as_ref().is_none_or(|h| t <= h);
    let mut candidates: Vec<Rational> = lo.iter().chain(hi.iter()).cloned().collect();
    for (a, (c1, s1)) in lines.iter().enumerate() {
        for (c2, s2) in &lines[a + 1..] {
            if s1 != s2 {
                let t = (c2 - c1) / (s1 - s2);
                if within(&t) {
                    candidates.push(t);
                }
            }
        }
    }
    let far = candidates.iter().max().cloned().unwrap_or_else(Rational::zero);
    let near = candidates.iter().min().cloned().unwrap_or_else(Rational::zero);
    if hi.is_none() {
        candidates.push(far + Rational::one());
    }
    if lo.is_none() {
        candidates.push(near - Rational::one());
    }
    candidates.sort();
    candidates.dedup();
    candidates.into_iter().find_map(|t| {
        let vals: Vec<Rational> = lines.iter().map(|(c, s)| c + s * &t).collect();
        let min = vals.iter().min()?;
        (vals.iter().filter(|v| *v == min).count() >= 2).then(|| point_at(&x0, u, &t))
    })
}

/// A univariate polynomial is singular iff some marked cell has at least
/// three points.
pub fn univariate_singular(f: &TropPoly) -> Result<bool> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: f.dim(),
        });
    }
    Ok(subdivision(f)?.cells.iter().any(|c| c.marking.len() >= 3))
}
