//! Exact polyhedral computations for matroid, order, stable set and edge
//! polytopes: facet enumeration, the rank invariant `F - (dim + 1)`,
//! unimodular equivalence, and bounded verification suites.

pub mod bits;
pub mod constructors;
pub mod equivalence;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod matroid;
pub mod poset;
pub mod suites;

pub use matroid::{matroid_from_bases, Matroid};
pub use poset::{make_W_poset, Poset};

pub use error::{Error, Result};
pub use graph::{graphic_matroid, FamilySpec, Multigraph, SimpleGraph};
pub use geometry::{
    affine_hull_dimension, enumerate_facets, lattice_invariants, normalize_to_lattice_chart,
    polytope_rank, AffineLatticeChart, HalfspaceSystem, Inequality, InvariantFingerprint,
    LatticePolytope,
};
pub use equivalence::{decide_equivalence, SearchLimits, Strategy, UnimodularWitness, Verdict};
pub use expr::{MatroidSpec, PolytopeExpr, PosetSpec};
