//! Synchronization and separation in Johnson association schemes `J(n, k)`.
//!
//! Everything is exact: binomials and eigenvalues are big integers, the dual
//! eigenvalue matrix and all bounds are big rationals, and clique numbers come
//! from complete branch-and-bound searches (or are reported as unproved).

pub mod bitset;
pub mod bounds;
pub mod classify;
pub mod combinat;
pub mod designs;
pub mod error;
pub mod graphs;
pub mod scheme;
pub mod search;
mod ser;

pub use combinat::{binom, BigRat, KSet, SchemeParams};
pub use error::{Error, Result};
pub use graphs::{build_graph, ClassSet, GraphOptions, SchemeGraph, VertexSet};
pub use scheme::{eigen_matrices, EigenMatrices};
pub use search::{max_clique, max_coclique, CliqueResult, Partition, SearchOptions};
pub use bounds::{clique_coclique_check, equality_filter, inner_distribution, ratio_bound, ratio_bound_for};
pub use classify::{
    classify_separation, projective_plane_conjecture_check, reproduce_k4_tables, synchronization_evidence,
    ClassificationReport, ClassifyOptions, TableOptions, Verdict,
};
pub use designs::{builtin_design, section3_witness, verify_steiner, BlockFamily};
