//! Exact clipping of plane tropical curves and SVG output.

use std::fmt::Write as _;

use serde_json::{json, Value};
use tropsing_core::arith::to_f64;
use tropsing_core::linalg::solve_affine;
use tropsing_core::singularity::equal_value_plane;
use tropsing_core::{render_point, singular_locus, AffineForm, HPolyhedron, Hyperplane, Rational, Result, TropPoly};

type Point = Vec<Rational>;
type Segment = (Point, Point);

const SIZE: f64 = 480.0;

pub struct Scene {
    bbox: [Rational; 4],
    curve: Vec<Segment>,
    derivative: Vec<Segment>,
    singular_segments: Vec<Segment>,
    singular_points: Vec<Point>,
}

/// Closed edges of `T(f)`: the one-dimensional regions where two terms tie
/// for the minimum.
fn edges(f: &TropPoly) -> Vec<HPolyhedron> {
    let mut out = Vec::new();
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            let mut h = HPolyhedron::universe(2).with_equality(equal_value_plane(f, i, j));
            for k in (0..f.len()).filter(|&k| k != i && k != j) {
                h = h.with_weak(equal_value_plane(f, i, k));
            }
            if h.canonical_relative_interior().is_some_and(|r| r.open_dim() == 1) {
                out.push(h);
            }
        }
    }
    out
}

fn box_planes(b: &[Rational; 4]) -> Vec<Hyperplane> {
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    vec![
        Hyperplane::new(vec![-one.clone(), zero.clone()], -b[0].clone()),
        Hyperplane::new(vec![zero.clone(), -one.clone()], -b[1].clone()),
        Hyperplane::new(vec![one.clone(), zero.clone()], b[2].clone()),
        Hyperplane::new(vec![zero, one], b[3].clone()),
    ]
}

/// The part of a closed one-dimensional polyhedron inside the extra
/// half-planes, with `None` for an unbounded end.
fn clip(h: &HPolyhedron, extra: &[Hyperplane]) -> Option<(Option<Point>, Option<Point>)> {
    let a: Vec<Vec<Rational>> = h.equalities.iter().map(|p| p.normal.clone()).collect();
    let b: Vec<Rational> = h.equalities.iter().map(|p| p.offset.clone()).collect();
    let (x0, basis) = solve_affine(&a, &b, 2)?;
    if basis.len() != 1 {
        return None;
    }
    let u = &basis[0];
    let dot = |n: &[Rational], x: &[Rational]| -> Rational { n.iter().zip(x).map(|(p, q)| p * q).sum() };
    let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
    for p in h.weak.iter().chain(&h.strict).chain(extra) {
        let s = dot(&p.normal, u);
        let r = &p.offset - dot(&p.normal, &x0);
        if s == Rational::from_integer(0.into()) {
            if r < Rational::from_integer(0.into()) {
                return None;
            }
            continue;
        }
        let t = r / &s;
        if s > Rational::from_integer(0.into()) {
            if hi.as_ref().is_none_or(|x| t < *x) {
                hi = Some(t);
            }
        } else if lo.as_ref().is_none_or(|x| t > *x) {
            lo = Some(t);
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    let at = |t: &Rational| -> Point { x0.iter().zip(u).map(|(a, b)| a + b * t).collect() };
    Some((lo.as_ref().map(at), hi.as_ref().map(at)))
}

fn clipped(hs: &[HPolyhedron], bbox: &[Rational; 4]) -> Vec<Segment> {
    let planes = box_planes(bbox);
    let mut out: Vec<Segment> = hs
        .iter()
        .filter_map(|h| match clip(h, &planes)? {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn in_box(p: &[Rational], b: &[Rational; 4]) -> bool {
    b[0] <= p[0] && p[0] <= b[2] && b[1] <= p[1] && p[1] <= b[3]
}

/// A box around every finite feature, padded by two units.
fn default_box(hs: &[HPolyhedron], points: &[Point]) -> [Rational; 4] {
    let mut pts: Vec<Point> = points.to_vec();
    for h in hs {
        if let Some((a, b)) = clip(h, &[]) {
            pts.extend(a);
            pts.extend(b);
        }
    }
    let r = |x: i64| Rational::from_integer(x.into());
    if pts.is_empty() {
        return [r(-5), r(-5), r(5), r(5)];
    }
    let min = |k: usize| pts.iter().map(|p| p[k].clone()).min().expect("nonempty");
    let max = |k: usize| pts.iter().map(|p| p[k].clone()).max().expect("nonempty");
    [min(0) - r(2), min(1) - r(2), max(0) + r(2), max(1) + r(2)]
}

impl Scene {
    pub fn build(f: &TropPoly, overlay: Option<&AffineForm>, bbox: Option<[Rational; 4]>) -> Result<Scene> {
        if f.dim() != 2 {
            return Err(tropsing_core::Error::DimensionMismatch {
                expected: 2,
                got: f.dim(),
            });
        }
        let curve = edges(f);
        let derivative = overlay.map(|l| edges(&f.euler_derivative(l))).unwrap_or_default();
        let (mut sing_pts, mut sing_edges) = (Vec::new(), Vec::new());
        if f.support().is_full_dimensional() {
            for face in singular_locus(f)?.singular_faces() {
                match face.dim {
                    0 => sing_pts.push(face.sample.clone()),
                    _ => {
                        let p = &face.polyhedron;
                        sing_edges.push(HPolyhedron {
                            dim: 2,
                            equalities: p.equalities.clone(),
                            weak: p.strict.clone(),
                            strict: Vec::new(),
                        });
                    }
                }
            }
        }
        let bbox = bbox.unwrap_or_else(|| default_box(&curve, &sing_pts));
        Ok(Scene {
            curve: clipped(&curve, &bbox),
            derivative: clipped(&derivative, &bbox),
            singular_segments: clipped(&sing_edges, &bbox),
            singular_points: sing_pts.into_iter().filter(|p| in_box(p, &bbox)).collect(),
            bbox,
        })
    }

    pub fn to_json(&self) -> Value {
        let segs = |s: &[Segment]| -> Vec<Value> {
            s.iter()
                .map(|(a, b)| json!([render_point(a), render_point(b)]))
                .collect()
        };
        json!({
            "box": render_point(&self.bbox),
            "curve": segs(&self.curve),
            "derivative": segs(&self.derivative),
            "singular_segments": segs(&self.singular_segments),
            "singular_points": self.singular_points.iter().map(|p| render_point(p)).collect::<Vec<_>>(),
        })
    }

    fn screen(&self, p: &[Rational]) -> (f64, f64) {
        let [x0, y0, x1, y1] = self.bbox.each_ref().map(to_f64);
        let x = (to_f64(&p[0]) - x0) / (x1 - x0) * SIZE;
        let y = (y1 - to_f64(&p[1])) / (y1 - y0) * SIZE;
        (x, y)
    }

    pub fn to_svg(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let group = |s: &mut String, class: &str, style: &str, segs: &[Segment]| {
            let _ = writeln!(s, r#"<g class="{class}" {style} fill="none">"#);
            for (a, b) in segs {
                let ((ax, ay), (bx, by)) = (self.screen(a), self.screen(b));
                let _ = writeln!(s, r#"<line x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}"/>"#);
            }
            let _ = writeln!(s, "</g>");
        };
        group(&mut s, "curve", r#"stroke="black" stroke-width="3""#, &self.curve);
        group(
            &mut s,
            "derivative",
            r##"stroke="#1f5fbf" stroke-width="1.5" stroke-dasharray="2 4""##,
            &self.derivative,
        );
        group(
            &mut s,
            "singular",
            r##"stroke="#c0392b" stroke-width="5""##,
            &self.singular_segments,
        );
        let _ = writeln!(s, r##"<g class="singular-points" fill="#c0392b">"##);
        for p in &self.singular_points {
            let (x, y) = self.screen(p);
            let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="6"/>"#);
        }
        let _ = writeln!(s, "</g>");
        s.push_str("</svg>\n");
        s
    }
}
