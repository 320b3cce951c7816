//! k disjoint X-saturating matchings: the subset condition
//! `Σ_y min{k, |N(y) ∩ W|} >= k|W|` checked by brute force, and a
//! constructive solver via a (k-on-X) factor plus König decomposition.

use thiserror::Error;

use crate::coloring::konig_color;
use crate::factor::{gf_factor, DegreeBounds};
use crate::graph::{BipartiteGraph, Matching};

/// Default cap on `nx` for subset enumeration.
pub const DEFAULT_SUBSET_LIMIT: usize = 20;

/// Hard ceiling; subsets are tracked as 64-bit masks.
const MAX_SUBSET_LIMIT: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LebensoldVerdict {
    pub holds: bool,
    /// Sorted X indices of a violating set; present iff `holds` is false.
    pub violating_set: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LebensoldError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("nx = {nx} exceeds the subset enumeration limit {limit}")]
    TooManySubsets { nx: usize, limit: usize },
}

/// The deficiency `k|W| - Σ_y min{k, |N(y) ∩ W|}`; positive means `W`
/// violates the condition.
pub fn deficiency(graph: &BipartiteGraph, k: usize, w: &[usize]) -> i64 {
    let mut hits = vec![0usize; graph.ny()];
    for &x in w {
        for &y in graph.neighbors_x(x) {
            hits[y] += 1;
        }
    }
    let lhs: usize = hits.iter().map(|&h| h.min(k)).sum();
    (k * w.len()) as i64 - lhs as i64
}

/// Checks the condition over all `2^nx` subsets of X. The reported violator
/// is the one with the smallest bitmask (bit `i` = X vertex `i`).
pub fn lebensold_condition(
    graph: &BipartiteGraph,
    k: usize,
    subset_limit: usize,
) -> Result<LebensoldVerdict, LebensoldError> {
    if k == 0 {
        return Err(LebensoldError::ZeroK);
    }
    let limit = subset_limit.min(MAX_SUBSET_LIMIT);
    if graph.nx() > limit {
        return Err(LebensoldError::TooManySubsets { nx: graph.nx(), limit });
    }
    let y_masks: Vec<u64> =
        (0..graph.ny()).map(|y| graph.neighbors_y(y).iter().fold(0u64, |m, &x| m | (1 << x))).collect();
    for w in 1u64..(1u64 << graph.nx()) {
        let lhs: u64 = y_masks.iter().map(|&m| u64::from((m & w).count_ones()).min(k as u64)).sum();
        if lhs < k as u64 * u64::from(w.count_ones()) {
            let set = (0..graph.nx()).filter(|&i| w >> i & 1 == 1).collect();
            return Ok(LebensoldVerdict { holds: false, violating_set: Some(set) });
        }
    }
    Ok(LebensoldVerdict { holds: true, violating_set: None })
}

/// Finds `k` pairwise disjoint matchings each saturating X, or `None`.
///
/// A factor with every X vertex at degree exactly `k` and every Y vertex at
/// most `k` has maximum degree `k`, so its König coloring has `k` classes,
/// each of which meets every X vertex once. Classes come back in color order.
pub fn k_disjoint_saturating(graph: &BipartiteGraph, k: usize) -> Option<Vec<Matching>> {
    if k == 0 {
        return Some(Vec::new());
    }
    let bounds = DegreeBounds::uniform(graph.nx(), graph.ny(), (k, k), (0, k));
    let factor = gf_factor(graph, &bounds).expect("uniform bounds are valid").factor()?;
    let coloring = konig_color(&factor);
    Some((1..=k).map(|c| coloring.class(c)).collect())
}
