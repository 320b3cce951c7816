//! Deciding and constructing S-pairs.
//!
//! Four routes, each sound and complete on its own domain:
//!
//! * [`solve_poly_large_s`] for `|S| >= |X| - 1`: a factor with degree 2 on
//!   `S`, degree 1 on the (at most one) vertex of `X − S` and at most 2 on
//!   `Y`, split into two matchings by a 2-edge-coloring.
//! * [`solve_bounded_s`]: every injective choice of `M2` on `S`, each
//!   followed by one matching computation on `G − M2`.
//! * [`solve_exact`]: the same search, pruned by Hall's condition on the
//!   residual graph after every partial `M2`.
//! * [`count_spairs_exact`]: full enumeration, used as the oracle.
//!
//! Solvers return S-pairs whose `M2` only touches `S`.

use thiserror::Error;

use crate::coloring::two_color_with_anchor;
use crate::factor::{gf_factor, DegreeBounds};
use crate::graph::{BipartiteGraph, DmInstance, Edge, Matching, SPair, SdmInstance};
use crate::matching::max_matching;

/// Default `|S|` cap for [`solve_bounded_s`].
pub const DEFAULT_BOUNDED_S_CAP: usize = 8;
/// Default largest `|S|` the dispatcher sends to [`solve_bounded_s`].
pub const DEFAULT_BOUNDED_DISPATCH: usize = 4;
/// Default edge limit for the enumeration oracles.
pub const DEFAULT_ORACLE_EDGE_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveMethod {
    PolyLargeS,
    BoundedS,
    ExactBacktrack,
}

impl SolveMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolveMethod::PolyLargeS => "poly-large-s",
            SolveMethod::BoundedS => "bounded-s",
            SolveMethod::ExactBacktrack => "exact-backtrack",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub spair: Option<SPair>,
    pub method: SolveMethod,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("|S| = {s} is below |X| - 1 = {}", .nx.saturating_sub(1))]
    SBelowLargeThreshold { s: usize, nx: usize },
    #[error("|S| = {s} exceeds the cap {cap}")]
    SAboveCap { s: usize, cap: usize },
    #[error("instance has {edges} edges, above the limit {limit}")]
    TooLarge { edges: usize, limit: usize },
    #[error("step budget of {0} exhausted")]
    BudgetExhausted(u64),
}

/// A cooperative step counter for the exponential searches. Running out is
/// reported as [`SolveError::BudgetExhausted`], never as "no".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budget {
    limit: Option<u64>,
    used: u64,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn steps(limit: u64) -> Self {
        Budget { limit: Some(limit), used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn tick(&mut self) -> Result<(), SolveError> {
        self.used += 1;
        match self.limit {
            Some(l) if self.used > l => Err(SolveError::BudgetExhausted(l)),
            _ => Ok(()),
        }
    }
}

/// Dispatcher settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveConfig {
    /// Largest `|S|` routed to the bounded enumeration.
    pub bounded_dispatch: usize,
    pub budget: Option<u64>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { bounded_dispatch: DEFAULT_BOUNDED_DISPATCH, budget: None }
    }
}

/// `M1` for a fixed `M2`: an X-saturating matching of `G − M2`, if any.
fn complete_m1(graph: &BipartiteGraph, m2: &Matching) -> Option<Matching> {
    if graph.nx() > graph.ny() {
        return None;
    }
    let m1 = max_matching(&graph.without_edges(m2));
    (m1.len() == graph.nx()).then_some(m1)
}

/// Polynomial route for `|S| >= |X| - 1`.
pub fn solve_poly_large_s(instance: &SdmInstance) -> Result<Option<SPair>, SolveError> {
    let g = instance.graph();
    let s = instance.s_set().len();
    if s + 1 < g.nx() {
        return Err(SolveError::SBelowLargeThreshold { s, nx: g.nx() });
    }
    let f_x: Vec<usize> = (0..g.nx()).map(|x| if instance.in_s(x) { 2 } else { 1 }).collect();
    let bounds = DegreeBounds { g_x: f_x.clone(), f_x, g_y: vec![0; g.ny()], f_y: vec![2; g.ny()] };
    let Some(factor) = gf_factor(g, &bounds).expect("bounds cover the graph").factor() else {
        return Ok(None);
    };
    let anchor = instance.x_minus_s().first().copied();
    let coloring = two_color_with_anchor(&factor, anchor).expect("factor has max degree 2 and a degree-1 anchor");
    Ok(Some(SPair::new(coloring.class(1), coloring.class(2))))
}

/// The `|S|`-bounded enumeration: each injective map from `S` into its
/// neighbourhood is a candidate `M2`, tried in index order.
pub fn solve_bounded_s(instance: &SdmInstance, cap: usize, budget: &mut Budget) -> Result<Option<SPair>, SolveError> {
    let s = instance.s_set().len();
    if s > cap {
        return Err(SolveError::SAboveCap { s, cap });
    }
    let mut search = Search {
        graph: instance.graph(),
        s_set: instance.s_set(),
        used_y: vec![false; instance.graph().ny()],
        m2: Matching::new(),
        budget,
        prune: false,
    };
    search.run(0)
}

/// Complete backtracking over `M2`, pruned whenever `G − M2` already fails
/// Hall's condition (removing more edges cannot repair it).
pub fn solve_exact(instance: &SdmInstance, budget: &mut Budget) -> Result<Option<SPair>, SolveError> {
    let mut search = Search {
        graph: instance.graph(),
        s_set: instance.s_set(),
        used_y: vec![false; instance.graph().ny()],
        m2: Matching::new(),
        budget,
        prune: true,
    };
    search.run(0)
}

struct Search<'a> {
    graph: &'a BipartiteGraph,
    s_set: &'a [usize],
    used_y: Vec<bool>,
    m2: Matching,
    budget: &'a mut Budget,
    prune: bool,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<Option<SPair>, SolveError> {
        self.budget.tick()?;
        if self.prune || depth == self.s_set.len() {
            let m1 = complete_m1(self.graph, &self.m2);
            match m1 {
                None => return Ok(None),
                Some(m1) if depth == self.s_set.len() => return Ok(Some(SPair::new(m1, self.m2.clone()))),
                Some(_) => {}
            }
        }
        let x = self.s_set[depth];
        for &y in self.graph.neighbors_x(x) {
            if self.used_y[y] {
                continue;
            }
            let e = Edge { x, y };
            self.used_y[y] = true;
            self.m2.insert(e);
            let found = self.run(depth + 1)?;
            self.m2.remove(e);
            self.used_y[y] = false;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Counts ordered pairs `(M1, M2)` where `M1` is an X-saturating matching,
/// `M2` a matching with exactly one edge at each vertex of `S` and no other
/// edges, and `M1 ∩ M2 = ∅`.
pub fn count_spairs_exact(instance: &SdmInstance, edge_limit: usize) -> Result<u64, SolveError> {
    let g = instance.graph();
    if g.num_edges() > edge_limit {
        return Err(SolveError::TooLarge { edges: g.num_edges(), limit: edge_limit });
    }
    let mut total = 0u64;
    for_each_saturating_matching(g, &mut |m1| {
        total += count_m2(g, instance.s_set(), m1, &mut vec![false; g.ny()], 0);
        false
    });
    Ok(total)
}

fn count_m2(g: &BipartiteGraph, s: &[usize], m1: &Matching, used: &mut [bool], depth: usize) -> u64 {
    if depth == s.len() {
        return 1;
    }
    let x = s[depth];
    let mut n = 0;
    for &y in g.neighbors_x(x) {
        if used[y] || m1.contains(Edge { x, y }) {
            continue;
        }
        used[y] = true;
        n += count_m2(g, s, m1, used, depth + 1);
        used[y] = false;
    }
    n
}

/// Calls `visit` on every X-saturating matching in index order until it
/// returns `true`.
fn for_each_saturating_matching(g: &BipartiteGraph, visit: &mut dyn FnMut(&Matching) -> bool) {
    fn go(
        g: &BipartiteGraph,
        x: usize,
        used: &mut [bool],
        m: &mut Matching,
        visit: &mut dyn FnMut(&Matching) -> bool,
    ) -> bool {
        if x == g.nx() {
            return visit(m);
        }
        for &y in g.neighbors_x(x) {
            if used[y] {
                continue;
            }
            used[y] = true;
            m.insert(Edge { x, y });
            let stop = go(g, x + 1, used, m, visit);
            m.remove(Edge { x, y });
            used[y] = false;
            if stop {
                return true;
            }
        }
        false
    }
    if g.nx() <= g.ny() {
        go(g, 0, &mut vec![false; g.ny()], &mut Matching::new(), visit);
    }
}

/// Exact DM search: each X-saturating matching `M1` of `G1` in index order,
/// then a maximum matching of `G2 − M1`. The limit applies to `|E(G1)|`.
pub fn solve_dm_exact(dm: &DmInstance, edge_limit: usize) -> Result<Option<(Matching, Matching)>, SolveError> {
    let edges = dm.g1().num_edges();
    if edges > edge_limit {
        return Err(SolveError::TooLarge { edges, limit: edge_limit });
    }
    let mut found = None;
    for_each_saturating_matching(dm.g1(), &mut |m1| {
        if let Some(m2) = complete_m1(dm.g2(), m1) {
            found = Some((m1.clone(), m2));
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// Picks a method: the factor route when `|S| >= |X| - 1`, the bounded
/// enumeration when `|S| <= config.bounded_dispatch`, otherwise exact search.
pub fn select_method(instance: &SdmInstance, config: &SolveConfig) -> SolveMethod {
    let s = instance.s_set().len();
    if s + 1 >= instance.graph().nx() {
        SolveMethod::PolyLargeS
    } else if s <= config.bounded_dispatch {
        SolveMethod::BoundedS
    } else {
        SolveMethod::ExactBacktrack
    }
}

pub fn solve(instance: &SdmInstance, config: &SolveConfig) -> Result<SolveOutcome, SolveError> {
    let method = select_method(instance, config);
    let mut budget = config.budget.map_or_else(Budget::unlimited, Budget::steps);
    let spair = match method {
        SolveMethod::PolyLargeS => solve_poly_large_s(instance)?,
        SolveMethod::BoundedS => solve_bounded_s(instance, config.bounded_dispatch, &mut budget)?,
        SolveMethod::ExactBacktrack => solve_exact(instance, &mut budget)?,
    };
    Ok(SolveOutcome { spair, method })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::verify_spair;

    fn inst(nx: usize, ny: usize, edges: &[(usize, usize)], s: &[usize]) -> SdmInstance {
        SdmInstance::new(BipartiteGraph::new(nx, ny, edges.iter().copied()).unwrap(), s.iter().copied()).unwrap()
    }

    fn m(edges: &[(usize, usize)]) -> Matching {
        edges.iter().map(|&e| Edge::from(e)).collect()
    }

    /// C8 as x_i ~ y_i, y_{i+1}.
    fn c8(s: &[usize]) -> SdmInstance {
        let edges: Vec<_> = (0..4).flat_map(|i| [(i, i), (i, (i + 1) % 4)]).collect();
        inst(4, 4, &edges, s)
    }

    #[test]
    fn poly_single_edge_is_no() {
        assert_eq!(solve_poly_large_s(&inst(1, 1, &[(0, 0)], &[0])).unwrap(), None);
    }

    #[test]
    fn poly_star() {
        let i = inst(1, 2, &[(0, 0), (0, 1)], &[0]);
        let p = solve_poly_large_s(&i).unwrap().unwrap();
        assert_eq!(p, SPair::new(m(&[(0, 0)]), m(&[(0, 1)])));
    }

    #[test]
    fn poly_c8_full_s_uses_both_perfect_matchings() {
        let i = c8(&[0, 1, 2, 3]);
        let p = solve_poly_large_s(&i).unwrap().unwrap();
        assert_eq!(verify_spair(&i, &p), Ok(()));
        assert_eq!(p.m1.len(), 4);
        assert_eq!(p.m2.len(), 4);
    }

    #[test]
    fn poly_rejects_small_s() {
        assert_eq!(solve_poly_large_s(&c8(&[0, 1])).unwrap_err(), SolveError::SBelowLargeThreshold { s: 2, nx: 4 });
    }

    #[test]
    fn poly_anchor_vertex_keeps_m1() {
        // X − S = {x1}; x1 has one factor edge, which must land in M1
        let i = inst(2, 3, &[(0, 0), (0, 1), (1, 1), (1, 2)], &[0]);
        let p = solve_poly_large_s(&i).unwrap().unwrap();
        assert_eq!(verify_spair(&i, &p), Ok(()));
        assert!(p.m2.iter().all(|e| e.x == 0));
    }

    #[test]
    fn bounded_empty_s() {
        let i = inst(2, 2, &[(0, 0), (1, 1)], &[]);
        let p = solve_bounded_s(&i, 8, &mut Budget::unlimited()).unwrap().unwrap();
        assert!(p.m2.is_empty());
        assert_eq!(p.m1.len(), 2);
    }

    #[test]
    fn bounded_single_edge_is_no() {
        let i = inst(1, 1, &[(0, 0)], &[0]);
        assert_eq!(solve_bounded_s(&i, 8, &mut Budget::unlimited()).unwrap(), None);
        assert!(matches!(
            solve_bounded_s(&i, 0, &mut Budget::unlimited()),
            Err(SolveError::SAboveCap { s: 1, cap: 0 })
        ));
    }

    #[test]
    fn exact_c8_with_s_i() {
        let i = c8(&[0, 2]);
        let p = solve_exact(&i, &mut Budget::unlimited()).unwrap().unwrap();
        assert_eq!(verify_spair(&i, &p), Ok(()));
    }

    #[test]
    fn budget_exhaustion_is_distinct_from_no() {
        let i = c8(&[0, 2]);
        assert_eq!(solve_exact(&i, &mut Budget::steps(1)).unwrap_err(), SolveError::BudgetExhausted(1));
    }

    #[test]
    fn counts() {
        assert_eq!(count_spairs_exact(&c8(&[0, 2]), 16).unwrap(), 2);
        assert_eq!(count_spairs_exact(&inst(1, 1, &[(0, 0)], &[]), 16).unwrap(), 1);
        let k22: Vec<_> = [(0, 0), (0, 1), (1, 0), (1, 1)].to_vec();
        assert_eq!(count_spairs_exact(&inst(2, 2, &k22, &[0, 1]), 16).unwrap(), 2);
        assert!(matches!(count_spairs_exact(&c8(&[0]), 4), Err(SolveError::TooLarge { edges: 8, limit: 4 })));
    }

    #[test]
    fn dm_exact_cases() {
        let k22 = BipartiteGraph::complete(2, 2);
        let dm = DmInstance::new(k22.clone(), k22).unwrap();
        let (m1, m2) = solve_dm_exact(&dm, 16).unwrap().unwrap();
        assert!(m1.is_disjoint_from(&m2));
        let pm = BipartiteGraph::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        let dm = DmInstance::new(pm.clone(), pm).unwrap();
        assert_eq!(solve_dm_exact(&dm, 16).unwrap(), None);
    }

    #[test]
    fn dispatch_rule() {
        let cfg = SolveConfig::default();
        let g = BipartiteGraph::complete(10, 10);
        let with_s = |n: usize| SdmInstance::new(g.clone(), 0..n).unwrap();
        assert_eq!(select_method(&with_s(10), &cfg), SolveMethod::PolyLargeS);
        assert_eq!(select_method(&with_s(9), &cfg), SolveMethod::PolyLargeS);
        assert_eq!(select_method(&with_s(2), &cfg), SolveMethod::BoundedS);
        assert_eq!(select_method(&with_s(6), &cfg), SolveMethod::ExactBacktrack);
        assert_eq!(solve(&with_s(2), &cfg).unwrap().method, SolveMethod::BoundedS);
    }

    #[test]
    fn empty_x_is_vacuous_yes() {
        let i = inst(0, 2, &[], &[]);
        let out = solve(&i, &SolveConfig::default()).unwrap();
        assert_eq!(out.spair, Some(SPair::default()));
        assert_eq!(count_spairs_exact(&i, 16).unwrap(), 1);
    }
}
