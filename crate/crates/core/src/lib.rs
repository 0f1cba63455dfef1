//! Exact singularity tests for tropical hypersurfaces with prescribed support,
//! and tangency tests for pairs of plane tropical curves.
//!
//! All arithmetic is over the rationals. The main entry points are
//! [`is_singular_point`], [`singular_locus`], [`is_nontransversal`] and
//! [`verify_singular_lift`].

pub mod arith;
pub mod error;
pub mod gallery;
pub mod intersection;
pub mod laurent;
pub mod lift;
pub mod linalg;
pub mod poly;
pub mod polyhedral;
pub mod singularity;
pub mod subdivision;
pub mod support;

pub use arith::{
    parse_point, parse_rational, render_point, render_rational, super_add, super_mul, trop_add, trop_mul, Rational,
    SuperValue, TropValue,
};
pub use error::{Error, Result};
pub use intersection::{
    cayley_poly, classify_types, is_nontransversal, nontransversal_locus, supertropical_check, vertex_shortcuts,
    CurvePair, NonTransversalReport, SlopeForm, SlopeSet, SlopeType, TypeDiagnostics, Verdict as IntersectionVerdict,
};
pub use laurent::LaurentScalar;
pub use lift::{verify_nontransversal_lift, verify_singular_lift, LiftPoly};
pub use poly::{Evaluation, TropPoly};
pub use polyhedral::{arrangement_faces, pairwise_hyperplanes, Face, HPolyhedron, Hyperplane, Sign};
pub use singularity::{
    circuit_pyramid_criterion, classify_planar, flag, is_singular_point, singular_locus, univariate_singular, Flag,
    SingularLocus, SingularityVerdict,
};
pub use subdivision::{complex, dual_cell, subdivision, DualCell, MarkedCell, MarkedSubdivision};
pub use support::{
    affine_dim, cayley, circuits, is_pyramid, spanning_forms, AffineForm, CayleyConfig, Circuit, LatticePoint, Support,
};
