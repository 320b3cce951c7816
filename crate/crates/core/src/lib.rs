//! Disjoint matchings in bipartite graphs.
//!
//! Given an (X,Y)-bigraph `G` and `S ⊆ X`, an *S-pair* is a pair of
//! edge-disjoint matchings `(M1, M2)` with `M1` saturating X and `M2`
//! saturating S. Deciding whether one exists is NP-hard in general
//! ([`reductions::reduce_3sat_to_sdm`]) and polynomial when
//! `|S| >= |X| - 1` ([`sdm::solve_poly_large_s`]).
//!
//! Building blocks: maximum matching with Hall certificates
//! ([`matching`]), feasible flow with lower bounds ([`flow`]) and the
//! (g,f)-factors built on it ([`factor`]), König edge coloring
//! ([`coloring`]), and the k-disjoint-matchings condition ([`lebensold`]).

pub mod coloring;
pub mod factor;
pub mod flow;
pub mod format;
pub mod graph;
pub mod lebensold;
pub mod matching;
pub mod reductions;
pub mod sdm;

pub use graph::{
    is_matching, verify_dm_solution, verify_spair, BipartiteGraph, DmInstance, Edge, GraphError, Matching, SPair,
    SPairViolation, SdmInstance, Side, VertexId,
};
