//! Families of constant-curvature polytopes in projective models, their
//! rescaled limits, and the isometry bookkeeping behind geometric
//! transition.
//!
//! The crate keeps hyperbolic, Euclidean, spherical, Anti-de Sitter and
//! half-pipe geometry side by side inside the projective sphere: points are
//! nonzero vectors up to positive scale, walls are linear forms cutting
//! half-spaces `{α ≤ 0}`, and isometries are matrices preserving a diagonal
//! quadratic form. On top of that sit:
//!
//! * [`param`] — wall tables stored as closed-form expressions in the
//!   deformation parameter, with exact one-sided limit extraction;
//! * [`polytope`] — vertex enumeration, adjacency, dihedral data, and
//!   cross-sections of the finite half-space intersections;
//! * [`transition`] — the zoom and fiber rescalings and limits of
//!   conjugated isometry paths;
//! * [`halfpipe`] — half-pipe geometry as the space of spacelike
//!   hyperplanes of Minkowski space, with the full group dictionary;
//! * [`gallery`] — the catalog of named polytope families and face-pairing
//!   schemes, loaded from a versioned data file;
//! * [`holonomy`] — words in pairing isometries, edge-cycle angle sums, and
//!   singularity detection;
//! * [`acceptance`] — the end-to-end check suite, also exposed through the
//!   command-line driver.
//!
//! Scalars are `f64` by default; an exact mode over ℚ(√2) backs the golden
//! data tests and the dictionary identities (see [`scalar`]).

pub mod acceptance;
pub mod forms;
pub mod gallery;
pub mod halfpipe;
pub mod holonomy;
pub mod linalg;
pub mod param;
pub mod polytope;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod transition;

/// Default relative tolerance for the floating-point predicates.
pub const DEFAULT_TOL: f64 = 1e-10;
