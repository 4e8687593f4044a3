//! Finite permutation-group model of Cayley-Abels graphs: normal subgroup
//! lattices, quotient graphs, elliptic and free factors, degree-guided
//! refinement into essentially chief series, and chief block association.

pub mod catalog;
pub mod cayley;
pub mod chief;
pub mod cli;
pub mod error;
pub mod finiteness;
pub mod graph;
pub mod group;
pub mod groupfile;
pub mod lattice;

pub use cayley::{
    build_graph, CayleyAbelsGraph, CayleyAbelsSpec, FactorClassification, FactorTag, Model,
};
pub use error::{Error, Result};
pub use group::{FiniteGroup, Permutation, QuotientGroup, Subgroup};
pub use lattice::{FamilyKind, NormalFamily, NormalLattice};
