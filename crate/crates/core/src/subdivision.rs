//! The coherent marked subdivision induced by the coefficients of a tropical
//! polynomial, and the dual cells of its hypersurface.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;
use serde_json::{json, Value};

use crate::arith::{render_point, render_rational, Rational};
use crate::error::{Error, Result};
use crate::linalg::{affine_rank, solve_affine};
use crate::poly::TropPoly;
use crate::polyhedral::{HPolyhedron, Hyperplane};
use crate::support::{combinations, hyperplane_through, LatticePoint, Support};

/// A cell of the subdivision, recorded by all support points on it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedCell {
    pub marking: Vec<usize>,
    pub dim: usize,
}

impl MarkedCell {
    pub fn from_marking(support: &Support, marking: Vec<usize>) -> Self {
        let refs: Vec<&[i64]> = marking.iter().map(|&i| support.point(i)).collect();
        let dim = affine_rank(&refs).max(0) as usize;
        MarkedCell { marking, dim }
    }

    pub fn points(&self, support: &Support) -> Vec<LatticePoint> {
        self.marking.iter().map(|&i| support.point(i).to_vec()).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.marking.binary_search(&i).is_ok()
    }

    pub fn to_json(&self, support: &Support) -> Value {
        json!({"marking": self.marking, "points": self.points(support), "dim": self.dim})
    }
}

/// The affine function `φ(w) = <slope, w> + offset` whose graph supports a
/// lower face of the lifted configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lifting {
    pub slope: Vec<Rational>,
    pub offset: Rational,
}

impl Lifting {
    pub fn eval(&self, i: &[i64]) -> Rational {
        let mut acc = self.offset.clone();
        for (a, &e) in self.slope.iter().zip(i) {
            if e != 0 {
                acc += a * Rational::from_integer(e.into());
            }
        }
        acc
    }

    /// The vertex of the hypersurface dual to the cell, `q = -slope`.
    pub fn dual_vertex(&self) -> Vec<Rational> {
        self.slope.iter().map(|x| -x).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({"slope": render_point(&self.slope), "offset": render_rational(&self.offset)})
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSubdivision {
    /// Every cell of every dimension, sorted by dimension then marking.
    pub cells: Vec<MarkedCell>,
    /// Maximal cells with their lifting functions.
    pub top: Vec<(MarkedCell, Lifting)>,
}

impl MarkedSubdivision {
    /// Whether every marked cell is affinely independent.
    pub fn is_triangulation(&self) -> bool {
        self.cells.iter().all(|c| c.marking.len() == c.dim + 1)
    }

    pub fn to_json(&self, support: &Support) -> Value {
        json!({
            "triangulation": self.is_triangulation(),
            "top_cells": self.top.iter().map(|(c, l)| {
                let mut v = c.to_json(support);
                v["lifting"] = l.to_json();
                v
            }).collect::<Vec<_>>(),
            "cells": self.cells.iter().map(|c| c.to_json(support)).collect::<Vec<_>>(),
        })
    }
}

/// The marked subdivision `Π_p` of the lower hull of `{(i, p_i)}`.
pub fn subdivision(f: &TropPoly) -> Result<MarkedSubdivision> {
    let support = f.support();
    if !support.is_full_dimensional() {
        return Err(Error::DeficientSpan {
            affine_dim: support.affine_dim(),
            dim: support.dim(),
        });
    }
    let d = support.dim();
    let n = support.len();
    let mut top: BTreeMap<Vec<usize>, Lifting> = BTreeMap::new();
    let mut buf = Vec::new();
    combinations(n, d + 1, &mut buf, 0, &mut |s| {
        // A simplex already inside a found cell gives the same lifting.
        if top.keys().any(|m| s.iter().all(|i| m.binary_search(i).is_ok())) {
            return;
        }
        let rows: Vec<Vec<Rational>> = s
            .iter()
            .map(|&i| {
                let mut r: Vec<Rational> = support
                    .point(i)
                    .iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect();
                r.push(Rational::one());
                r
            })
            .collect();
        let rhs: Vec<Rational> = s.iter().map(|&i| f.coeff(i).clone()).collect();
        let Some((sol, basis)) = solve_affine(&rows, &rhs, d + 1) else {
            return;
        };
        if !basis.is_empty() {
            return;
        }
        let lifting = Lifting {
            slope: sol[..d].to_vec(),
            offset: sol[d].clone(),
        };
        let mut marking = Vec::new();
        for k in 0..n {
            let phi = lifting.eval(support.point(k));
            match phi.cmp(f.coeff(k)) {
                std::cmp::Ordering::Greater => return,
                std::cmp::Ordering::Equal => marking.push(k),
                std::cmp::Ordering::Less => {}
            }
        }
        top.insert(marking, lifting);
    });
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for marking in top.keys() {
        all.extend(cell_faces(support, marking));
    }
    let mut cells: Vec<MarkedCell> = all.into_iter().map(|m| MarkedCell::from_marking(support, m)).collect();
    cells.sort_by(|a, b| (a.dim, &a.marking).cmp(&(b.dim, &b.marking)));
    let top = top
        .into_iter()
        .map(|(m, l)| (MarkedCell::from_marking(support, m), l))
        .collect();
    Ok(MarkedSubdivision { cells, top })
}

/// All nonempty faces of a full-dimensional cell, as subsets of its marking.
fn cell_faces(support: &Support, marking: &[usize]) -> BTreeSet<Vec<usize>> {
    let d = support.dim();
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut buf = Vec::new();
    combinations(marking.len(), d, &mut buf, 0, &mut |s| {
        let refs: Vec<&[i64]> = s.iter().map(|&k| support.point(marking[k])).collect();
        let Some(form) = hyperplane_through(&refs) else {
            return;
        };
        let vals: Vec<i64> = marking.iter().map(|&i| form.eval(support.point(i))).collect();
        if vals.iter().all(|&v| v >= 0) || vals.iter().all(|&v| v <= 0) {
            let facet: Vec<usize> = marking
                .iter()
                .zip(&vals)
                .filter(|(_, &v)| v == 0)
                .map(|(&i, _)| i)
                .collect();
            facets.insert(facet);
        }
    });
    let mut faces = facets.clone();
    let mut work: Vec<Vec<usize>> = facets.iter().cloned().collect();
    while let Some(face) = work.pop() {
        for facet in &facets {
            let meet: Vec<usize> = face
                .iter()
                .filter(|i| facet.binary_search(i).is_ok())
                .copied()
                .collect();
            if !meet.is_empty() && faces.insert(meet.clone()) {
                work.push(meet);
            }
        }
    }
    faces.insert(marking.to_vec());
    faces
}

/// A cell `σ*` of the hypersurface (or of the complement, for a singleton
/// marking) with its marking `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCell {
    pub marking: Vec<usize>,
    /// Dimension of `σ*`; equals `d - dim σ`.
    pub dim: usize,
    /// Closed cell: equal values on `σ`, no smaller value elsewhere.
    pub closed: HPolyhedron,
}

impl DualCell {
    pub fn new(f: &TropPoly, marking: Vec<usize>) -> Self {
        let support = f.support();
        let d = support.dim();
        let s0 = marking[0];
        let diff = |a: usize, b: usize| -> Vec<Rational> {
            support
                .point(a)
                .iter()
                .zip(support.point(b))
                .map(|(x, y)| Rational::from_integer((x - y).into()))
                .collect()
        };
        let mut closed = HPolyhedron::universe(d);
        for &i in &marking[1..] {
            closed = closed.with_equality(Hyperplane::new(diff(i, s0), f.coeff(s0) - f.coeff(i)));
        }
        for k in 0..support.len() {
            if marking.binary_search(&k).is_err() {
                closed = closed.with_weak(Hyperplane::new(diff(s0, k), f.coeff(k) - f.coeff(s0)));
            }
        }
        let cell = MarkedCell::from_marking(support, marking);
        DualCell {
            dim: d - cell.dim,
            marking: cell.marking,
            closed,
        }
    }

    /// The points whose argmin is exactly the marking.
    pub fn relative_interior(&self) -> HPolyhedron {
        self.closed.strict_interior()
    }

    pub fn sample(&self) -> Vec<Rational> {
        self.relative_interior()
            .feasible_point()
            .expect("cells of a subdivision have nonempty duals")
    }

    pub fn to_json(&self, support: &Support) -> Value {
        let points: Vec<&[i64]> = self.marking.iter().map(|&i| support.point(i)).collect();
        json!({
            "marking": self.marking,
            "points": points,
            "dim": self.dim,
            "sample": render_point(&self.sample()),
            "cell": self.closed.to_json(),
        })
    }
}

/// The dual cell of the argmin set at `q`.
pub fn dual_cell(f: &TropPoly, q: &[Rational]) -> Result<DualCell> {
    let e = f.eval(q)?;
    if e.argmin.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    Ok(DualCell::new(f, e.argmin))
}

/// All cells of `T(f)`, sorted by dimension then marking. Vertices are the
/// cells dual to full-dimensional markings.
pub fn complex(f: &TropPoly) -> Result<Vec<DualCell>> {
    let sub = subdivision(f)?;
    let mut cells: Vec<DualCell> = sub
        .cells
        .into_iter()
        .filter(|c| c.marking.len() >= 2)
        .map(|c| DualCell::new(f, c.marking))
        .collect();
    cells.sort_by(|a, b| (a.dim, &a.marking).cmp(&(b.dim, &b.marking)));
    Ok(cells)
}
