//! Tangency of two plane tropical curves through the Cayley polynomial
//! `f ⊕ w3 ⊙ g`: exact search over the third coordinate `l`, form types,
//! vertex shortcuts, the full non-transversal locus and the supertropical
//! criterion.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::arith::{render_rational, super_add, super_mul, Rational, SuperValue};
use crate::error::{Error, Result};
use crate::poly::TropPoly;
use crate::polyhedral::HPolyhedron;
use crate::singularity::{equal_value_plane, merge_pieces, singular_locus, Piece};
use crate::support::{cayley, spanning_forms, AffineForm, CayleyConfig, LatticePoint};

/// Two plane curves whose supports together span `Z^2`.
#[derive(Clone, Debug)]
pub struct CurvePair {
    f: TropPoly,
    g: TropPoly,
    config: CayleyConfig,
    reps: Vec<RepForm>,
}

/// A Cayley form `L + c w3` chosen to represent its pair of derivative
/// supports.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RepForm {
    form: AffineForm,
    c: i64,
    first: Vec<usize>,
    second: Vec<usize>,
}

impl CurvePair {
    pub fn new(f: TropPoly, g: TropPoly) -> Result<Self> {
        for p in [&f, &g] {
            if p.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    got: p.dim(),
                });
            }
            if p.len() < 2 {
                return Err(Error::Precondition("each curve needs at least two terms".into()));
            }
        }
        let config = cayley(f.support(), g.support())?;
        let mut reps: Vec<RepForm> = Vec::new();
        let mut seen = BTreeMap::new();
        // The constant form encodes membership in the Cayley hypersurface.
        let forms = std::iter::once(AffineForm::constant(3, 1)).chain(spanning_forms(&config.support)?);
        for lf in forms {
            let form = AffineForm::new(lf.j[..2].to_vec(), lf.beta);
            let c = lf.j[2];
            let first: Vec<usize> = (0..f.len()).filter(|&i| form.eval(f.support().point(i)) != 0).collect();
            let second: Vec<usize> = (0..g.len())
                .filter(|&i| form.eval(g.support().point(i)) + c != 0)
                .collect();
            if seen.insert((first.clone(), second.clone()), ()).is_none() {
                reps.push(RepForm { form, c, first, second });
            }
        }
        Ok(CurvePair { f, g, config, reps })
    }

    pub fn f(&self) -> &TropPoly {
        &self.f
    }

    pub fn g(&self) -> &TropPoly {
        &self.g
    }

    pub fn config(&self) -> &CayleyConfig {
        &self.config
    }

    fn check_point(&self, q: &[Rational]) -> Result<()> {
        if q.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: q.len(),
            });
        }
        Ok(())
    }

    fn intersects_at(&self, q: &[Rational]) -> Result<bool> {
        self.check_point(q)?;
        Ok(self.f.on_hypersurface(q)? && self.g.on_hypersurface(q)?)
    }

    /// Per-representative minima and counts at `q`.
    fn layer_data(&self, q: &[Rational]) -> Vec<(Layer, Layer)> {
        let vf = self.f.values_unchecked(q);
        let vg = self.g.values_unchecked(q);
        self.reps
            .iter()
            .map(|r| (Layer::of(&vf, &r.first), Layer::of(&vg, &r.second)))
            .collect()
    }
}

/// Minimum of one layer of a derivative and how often it is attained.
#[derive(Clone, Debug)]
struct Layer {
    min: Option<Rational>,
    count: usize,
}

impl Layer {
    fn of(values: &[Rational], idx: &[usize]) -> Layer {
        let min = idx.iter().map(|&i| &values[i]).min().cloned();
        let count = min
            .as_ref()
            .map_or(0, |m| idx.iter().filter(|&&i| values[i] == *m).count());
        Layer { min, count }
    }

    fn value(&self) -> SuperValue {
        match (&self.min, self.count) {
            (None, _) => SuperValue::Infinity,
            (Some(m), 1) => SuperValue::Tangible(m.clone()),
            (Some(m), _) => SuperValue::Ghost(m.clone()),
        }
    }
}

/// The Cayley polynomial `f ⊕ w3 ⊙ g` in three variables.
pub fn cayley_poly(pair: &CurvePair) -> TropPoly {
    let coeffs = pair.f.coeffs().iter().chain(pair.g.coeffs()).cloned().collect();
    TropPoly::new(pair.config.support.clone(), coeffs).expect("lengths agree")
}

/// Closed convex subset of the `l`-line; `None` bounds are infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlopeSet {
    Empty,
    Interval { lo: Option<Rational>, hi: Option<Rational> },
}

impl SlopeSet {
    pub fn all() -> Self {
        SlopeSet::Interval { lo: None, hi: None }
    }

    pub fn point(x: Rational) -> Self {
        SlopeSet::Interval {
            lo: Some(x.clone()),
            hi: Some(x),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SlopeSet::Empty)
    }

    pub fn contains(&self, l: &Rational) -> bool {
        match self {
            SlopeSet::Empty => false,
            SlopeSet::Interval { lo, hi } => lo.as_ref().is_none_or(|a| a <= l) && hi.as_ref().is_none_or(|b| l <= b),
        }
    }

    pub fn intersect(&self, other: &SlopeSet) -> SlopeSet {
        match (self, other) {
            (SlopeSet::Interval { lo: a, hi: b }, SlopeSet::Interval { lo: c, hi: d }) => {
                let lo = match (a, c) {
                    (Some(x), Some(y)) => Some(x.max(y).clone()),
                    (x, y) => x.clone().or_else(|| y.clone()),
                };
                let hi = match (b, d) {
                    (Some(x), Some(y)) => Some(x.min(y).clone()),
                    (x, y) => x.clone().or_else(|| y.clone()),
                };
                match (&lo, &hi) {
                    (Some(x), Some(y)) if x > y => SlopeSet::Empty,
                    _ => SlopeSet::Interval { lo, hi },
                }
            }
            _ => SlopeSet::Empty,
        }
    }

    /// A member of the set, preferring 0.
    pub fn sample(&self) -> Option<Rational> {
        let zero = Rational::zero();
        match self {
            SlopeSet::Empty => None,
            _ if self.contains(&zero) => Some(zero),
            SlopeSet::Interval { lo: Some(a), .. } if *a > zero => Some(a.clone()),
            SlopeSet::Interval { hi, .. } => hi.clone(),
        }
    }

    /// `[]`, `["x"]` for a point, or `[["lo", "hi"]]` with `"-inf"`/`"inf"`.
    pub fn to_json(&self) -> Value {
        match self {
            SlopeSet::Empty => json!([]),
            SlopeSet::Interval {
                lo: Some(a),
                hi: Some(b),
            } if a == b => json!([render_rational(a)]),
            SlopeSet::Interval { lo, hi } => json!([[
                lo.as_ref().map_or("-inf".to_string(), render_rational),
                hi.as_ref().map_or("inf".to_string(), render_rational),
            ]]),
        }
    }
}

/// How the two layers of a Cayley form's derivative attain their minima at
/// a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlopeType {
    /// First layer at least twice, second once: `l >= l*`.
    One,
    /// First layer once, second at least twice: `l <= l*`.
    Two,
    /// Both at least twice: every `l`.
    Three,
    /// Both once: only `l = l*`.
    Four,
    /// One layer is empty and the other attains its minimum at least twice.
    Unconstrained,
    /// One layer is empty and the other attains its minimum once.
    Obstructed,
}

impl SlopeType {
    pub fn label(self) -> &'static str {
        match self {
            SlopeType::One => "1",
            SlopeType::Two => "2",
            SlopeType::Three => "3",
            SlopeType::Four => "4",
            SlopeType::Unconstrained => "unconstrained",
            SlopeType::Obstructed => "obstructed",
        }
    }
}

/// A representative Cayley form `L + c w3` with its type at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeForm {
    pub form: AffineForm,
    pub c: i64,
    pub kind: SlopeType,
    /// `min ∂f/∂L - min ∂g/∂(L+c)` when both layers are nonempty.
    pub l_star: Option<Rational>,
    pub slopes: SlopeSet,
}

impl SlopeForm {
    /// `L + c w3` as an affine form in three variables.
    pub fn cayley_form(&self) -> AffineForm {
        AffineForm::new(vec![self.form.j[0], self.form.j[1], self.c], self.form.beta)
    }

    fn build(r: &RepForm, first: &Layer, second: &Layer) -> SlopeForm {
        let (kind, l_star, slopes) = match (&first.min, &second.min) {
            (Some(m1), Some(m2)) => {
                let l = m1 - m2;
                let (k, lo, hi) = match (first.count >= 2, second.count >= 2) {
                    (true, false) => (SlopeType::One, Some(l.clone()), None),
                    (false, true) => (SlopeType::Two, None, Some(l.clone())),
                    (true, true) => (SlopeType::Three, None, None),
                    (false, false) => (SlopeType::Four, Some(l.clone()), Some(l.clone())),
                };
                (k, Some(l), SlopeSet::Interval { lo, hi })
            }
            _ => {
                if first.count.max(second.count) >= 2 {
                    (SlopeType::Unconstrained, None, SlopeSet::all())
                } else {
                    (SlopeType::Obstructed, None, SlopeSet::Empty)
                }
            }
        };
        SlopeForm {
            form: r.form.clone(),
            c: r.c,
            kind,
            l_star,
            slopes,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "form": self.cayley_form(),
            "display": self.cayley_form().to_string(),
            "type": self.kind.label(),
            "l_star": self.l_star.as_ref().map(render_rational),
        })
    }
}

/// Type data at an intersection point. `l1 = None` means `-∞`, `l2 = None`
/// means `+∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeDiagnostics {
    pub forms: Vec<SlopeForm>,
    pub l1: Option<Rational>,
    pub l2: Option<Rational>,
    pub l4: Vec<Rational>,
}

impl TypeDiagnostics {
    /// Reconstructs feasibility from `l1 <= l4(L'_1) = … = l4(L'_r) <= l2`
    /// and the absence of obstructed forms.
    pub fn feasible(&self) -> bool {
        if self.forms.iter().any(|f| f.kind == SlopeType::Obstructed) {
            return false;
        }
        let le = |a: &Option<Rational>, b: &Option<Rational>| match (a, b) {
            (Some(x), Some(y)) => x <= y,
            _ => true,
        };
        if !le(&self.l1, &self.l2) {
            return false;
        }
        match self.l4.first() {
            None => true,
            Some(v) => {
                self.l4.iter().all(|x| x == v) && le(&self.l1, &Some(v.clone())) && le(&Some(v.clone()), &self.l2)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "l1": self.l1.as_ref().map_or("-inf".to_string(), render_rational),
            "l2": self.l2.as_ref().map_or("inf".to_string(), render_rational),
            "l4": self.l4.iter().map(render_rational).collect::<Vec<_>>(),
            "forms": self.forms.iter().map(SlopeForm::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Types of all representative forms at `q`, which must lie on both curves.
pub fn classify_types(pair: &CurvePair, q: &[Rational]) -> Result<TypeDiagnostics> {
    if !pair.intersects_at(q)? {
        return Err(Error::Precondition("point is not on both curves".into()));
    }
    Ok(diagnostics(pair, q))
}

fn diagnostics(pair: &CurvePair, q: &[Rational]) -> TypeDiagnostics {
    let forms: Vec<SlopeForm> = pair
        .reps
        .iter()
        .zip(pair.layer_data(q))
        .map(|(r, (a, b))| SlopeForm::build(r, &a, &b))
        .collect();
    let of = |k: SlopeType| {
        forms
            .iter()
            .filter(move |f| f.kind == k)
            .filter_map(|f| f.l_star.clone())
    };
    let mut l4: Vec<Rational> = of(SlopeType::Four).collect();
    l4.sort();
    l4.dedup();
    TypeDiagnostics {
        l1: of(SlopeType::One).max(),
        l2: of(SlopeType::Two).min(),
        l4,
        forms: forms.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The set of `l` with `(q, l)` singular on the Cayley surface.
    NonTransversal {
        slopes: SlopeSet,
    },
    /// The first form whose constraint empties the feasible set.
    Transversal {
        witness: SlopeForm,
    },
    NotIntersecting,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::NonTransversal { .. } => "non_transversal",
            Verdict::Transversal { .. } => "transversal",
            Verdict::NotIntersecting => "not_intersecting",
        }
    }

    pub fn is_nontransversal(&self) -> bool {
        matches!(self, Verdict::NonTransversal { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonTransversalReport {
    pub verdict: Verdict,
    pub diagnostics: Option<TypeDiagnostics>,
}

impl NonTransversalReport {
    pub fn is_nontransversal(&self) -> bool {
        self.verdict.is_nontransversal()
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({"verdict": self.verdict.label()});
        match &self.verdict {
            Verdict::NonTransversal { slopes } => {
                out["feasible_slopes"] = slopes.to_json();
                out["slope"] = json!(slopes.sample().map(|l| render_rational(&l)));
            }
            Verdict::Transversal { witness } => out["witness"] = witness.to_json(),
            Verdict::NotIntersecting => {}
        }
        if let Some(d) = &self.diagnostics {
            out["diagnostics"] = d.to_json();
        }
        out
    }
}

/// Decides whether `q` is a non-transversal intersection point: some `l`
/// makes `(q, l)` a singular point of the Cayley polynomial.
pub fn is_nontransversal(pair: &CurvePair, q: &[Rational]) -> Result<NonTransversalReport> {
    if !pair.intersects_at(q)? {
        return Ok(NonTransversalReport {
            verdict: Verdict::NotIntersecting,
            diagnostics: None,
        });
    }
    let diag = diagnostics(pair, q);
    let mut slopes = SlopeSet::all();
    let mut verdict = None;
    for form in &diag.forms {
        slopes = slopes.intersect(&form.slopes);
        if slopes.is_empty() {
            verdict = Some(Verdict::Transversal { witness: form.clone() });
            break;
        }
    }
    Ok(NonTransversalReport {
        verdict: verdict.unwrap_or(Verdict::NonTransversal { slopes }),
        diagnostics: Some(diag),
    })
}

/// Supertropical form of the test: for every ordered pair of representative
/// forms the value of `∂f/∂L1 ⊙ ∂g/∂(L2+c2) ⊕ ∂f/∂L2 ⊙ ∂g/∂(L1+c1)` at `q`
/// lies in the ghost ideal, and a form with an empty layer has a ghost
/// value on the other layer.
pub fn supertropical_check(pair: &CurvePair, q: &[Rational]) -> Result<bool> {
    if !pair.intersects_at(q)? {
        return Err(Error::Precondition("point is not on both curves".into()));
    }
    let vals: Vec<(SuperValue, SuperValue)> = pair.layer_data(q).iter().map(|(a, b)| (a.value(), b.value())).collect();
    let single_ok = vals.iter().all(|(x, y)| match (x, y) {
        (SuperValue::Infinity, other) | (other, SuperValue::Infinity) => other.in_ghost_ideal(),
        _ => true,
    });
    if !single_ok {
        return Ok(false);
    }
    for (x1, y1) in &vals {
        for (x2, y2) in &vals {
            if !super_add(&super_mul(x1, y2), &super_mul(x2, y1)).in_ghost_ideal() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Why a shortcut applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shortcut {
    /// `q` is a vertex of both curves.
    BothVertices,
    /// `q` is a vertex of one curve, lies inside an edge of the other and is
    /// an isolated intersection point.
    IsolatedVertexOnEdge,
}

/// Non-transversality certified by the local structure at `q` alone, or
/// `None` when the general test is needed.
pub fn vertex_shortcuts(pair: &CurvePair, q: &[Rational]) -> Result<Option<Shortcut>> {
    if !pair.intersects_at(q)? {
        return Err(Error::Precondition("point is not on both curves".into()));
    }
    let local = |p: &TropPoly| -> Result<Vec<LatticePoint>> {
        Ok(p.eval(q)?
            .argmin
            .iter()
            .map(|&i| p.support().point(i).to_vec())
            .collect())
    };
    let (sf, sg) = (local(&pair.f)?, local(&pair.g)?);
    let (df, dg) = (crate::support::affine_dim(&sf)?, crate::support::affine_dim(&sg)?);
    Ok(match (df, dg) {
        (2, 2) => Some(Shortcut::BothVertices),
        (2, 1) if isolated(&sf, &sg) => Some(Shortcut::IsolatedVertexOnEdge),
        (1, 2) if isolated(&sg, &sf) => Some(Shortcut::IsolatedVertexOnEdge),
        _ => None,
    })
}

/// Whether no ray of the vertex fan dual to `cell` runs along the edge dual
/// to the collinear `segment`, i.e. no edge of `conv(cell)` is parallel to it.
fn isolated(cell: &[LatticePoint], segment: &[LatticePoint]) -> bool {
    let dir = [segment[1][0] - segment[0][0], segment[1][1] - segment[0][1]];
    let cross = |u: [i64; 2], v: [i64; 2]| u[0] * v[1] - u[1] * v[0];
    for a in cell {
        for b in cell {
            let e = [b[0] - a[0], b[1] - a[1]];
            if e == [0, 0] || cross(e, dir) != 0 {
                continue;
            }
            let sides: Vec<i64> = cell
                .iter()
                .map(|p| cross(e, [p[0] - a[0], p[1] - a[1]]).signum())
                .collect();
            if sides.iter().all(|&s| s >= 0) || sides.iter().all(|&s| s <= 0) {
                return false;
            }
        }
    }
    true
}

/// Sample points of `T(f) ∩ T(g)`: for every pair of edges, one point of
/// their closed common part and, if different, one of its relative interior.
pub fn intersection_samples(pair: &CurvePair) -> Vec<Vec<Rational>> {
    let regions = |p: &TropPoly| -> Vec<HPolyhedron> {
        let mut out = Vec::new();
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                let mut h = HPolyhedron::universe(2).with_equality(equal_value_plane(p, i, j));
                for k in (0..p.len()).filter(|&k| k != i && k != j) {
                    h = h.with_weak(equal_value_plane(p, i, k));
                }
                out.push(h);
            }
        }
        out
    };
    let (rf, rg) = (regions(&pair.f), regions(&pair.g));
    let mut samples = Vec::new();
    for a in &rf {
        for b in &rg {
            let h = a.intersection(b);
            if let Some(x) = h.feasible_point() {
                samples.push(x);
            }
            if let Some(x) = h.canonical_relative_interior().and_then(|r| r.feasible_point()) {
                samples.push(x);
            }
        }
    }
    samples.sort();
    samples.dedup();
    samples
}

/// All non-transversal points, as the projection of the singular locus of
/// the Cayley polynomial to the first two coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonTransversalLocus {
    /// Relatively open, pairwise distinct, sorted.
    pub pieces: Vec<HPolyhedron>,
}

impl NonTransversalLocus {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, q: &[Rational]) -> bool {
        self.pieces.iter().any(|p| p.contains(q))
    }

    pub fn merged(&self) -> Vec<Piece> {
        merge_pieces(self.pieces.iter().collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pieces": self.pieces.iter().map(|p| {
                let mut v = p.to_json();
                v["dim"] = json!(p.open_dim());
                v
            }).collect::<Vec<_>>(),
            "merged": self.merged().iter().map(Piece::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn nontransversal_locus(pair: &CurvePair) -> Result<NonTransversalLocus> {
    let locus = singular_locus(&cayley_poly(pair))?;
    let mut pieces: Vec<HPolyhedron> = locus
        .singular_faces()
        .filter_map(|f| f.polyhedron.project_out_last().canonical_relative_interior())
        .collect();
    pieces.sort_by(|a, b| (a.open_dim(), a).cmp(&(b.open_dim(), b)));
    pieces.dedup();
    Ok(NonTransversalLocus { pieces })
}
