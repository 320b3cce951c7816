//! Executable reductions, with certificate translation both ways.

mod cnf;
mod dm;
mod sat;

use thiserror::Error;

use crate::graph::{GraphError, SPairViolation};

pub use cnf::{parse_dimacs_cnf, Assignment, CnfError, CnfFormula, Literal, MAX_CLAUSE_ARITY};
pub use dm::{extend_spair_to_dm, project_dm_to_spair, reduce_sdm_to_dm};
pub use sat::{
    decode_spair_to_assignment, encode_assignment_to_spair, parse_mapping, reduce_3sat_to_sdm, true_false_pairs,
    write_mapping, GadgetMap,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("formula has no clauses (trivially satisfiable)")]
    NoClauses,
    #[error("the pair on the cycle of variable {var} is neither the true nor the false pair")]
    NeitherPair { var: usize },
    #[error("assignment leaves clause {clause} unsatisfied")]
    UnsatisfiedClause { clause: usize },
    #[error("assignment covers {got} variables, formula has {expected}")]
    AssignmentLength { expected: usize, got: usize },
    #[error("|S| = {s} is not below |X| - 1 = {}", .nx.saturating_sub(1))]
    SNotSmall { s: usize, nx: usize },
    #[error("|Y| = {ny} < |X| = {nx}: no S-pair exists")]
    TooFewY { nx: usize, ny: usize },
    #[error("not an S-pair: {0}")]
    InvalidSPair(SPairViolation),
    #[error("not a DM solution: {0}")]
    InvalidDmSolution(String),
    #[error("mapping line {line}: {msg}")]
    Mapping { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}
