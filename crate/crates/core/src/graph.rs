//! Bipartite graphs, matchings and the certificate types shared by every solver.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Which partite set a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    X,
    Y,
}

/// A vertex of an (X,Y)-bigraph, addressed by side and 0-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId {
    pub side: Side,
    pub index: usize,
}

impl VertexId {
    pub fn x(index: usize) -> Self {
        VertexId { side: Side::X, index }
    }

    pub fn y(index: usize) -> Self {
        VertexId { side: Side::Y, index }
    }

    /// Whether the index is in range for `graph`.
    pub fn is_in(&self, graph: &BipartiteGraph) -> bool {
        match self.side {
            Side::X => self.index < graph.nx(),
            Side::Y => self.index < graph.ny(),
        }
    }
}

impl fmt::Display for VertexId {
    /// Text form used by the mapping sidecar: `x<n>` / `y<n>`, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::X => write!(f, "x{}", self.index + 1),
            Side::Y => write!(f, "y{}", self.index + 1),
        }
    }
}

/// An edge between X vertex `x` and Y vertex `y`. Ordered by `x`, then `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub x: usize,
    pub y: usize,
}

impl Edge {
    pub fn new(x: usize, y: usize) -> Self {
        Edge { x, y }
    }
}

impl From<(usize, usize)> for Edge {
    fn from((x, y): (usize, usize)) -> Self {
        Edge { x, y }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}y{}", self.x + 1, self.y + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({x}, {y}): x-index out of range (nx = {nx})")]
    XOutOfRange { x: usize, y: usize, nx: usize },
    #[error("edge ({x}, {y}): y-index out of range (ny = {ny})")]
    YOutOfRange { x: usize, y: usize, ny: usize },
    #[error("S contains x-index {index}, but nx = {nx}")]
    SOutOfRange { index: usize, nx: usize },
    #[error("S contains x-index {0} more than once")]
    SDuplicate(usize),
    #[error("graphs have different vertex sets: ({0}, {1}) vs ({2}, {3})")]
    VertexSetMismatch(usize, usize, usize, usize),
}

/// An (X,Y)-bigraph. Adjacency is kept sorted from both sides, so `N(x)` and
/// `N(y)` are symmetric by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    nx: usize,
    ny: usize,
    adj_x: Vec<Vec<usize>>,
    adj_y: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds a canonical graph from a raw edge list. Duplicate edges are
    /// dropped; any out-of-range endpoint is an error.
    pub fn new<I, E>(nx: usize, ny: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut set = BTreeSet::new();
        for e in edges {
            let e = e.into();
            if e.x >= nx {
                return Err(GraphError::XOutOfRange { x: e.x, y: e.y, nx });
            }
            if e.y >= ny {
                return Err(GraphError::YOutOfRange { x: e.x, y: e.y, ny });
            }
            set.insert(e);
        }
        Ok(Self::from_sorted_unique(nx, ny, set))
    }

    /// The graph with no edges.
    pub fn empty(nx: usize, ny: usize) -> Self {
        BipartiteGraph { nx, ny, adj_x: vec![Vec::new(); nx], adj_y: vec![Vec::new(); ny] }
    }

    /// The complete bigraph K_{nx,ny}.
    pub fn complete(nx: usize, ny: usize) -> Self {
        let edges = (0..nx).flat_map(|x| (0..ny).map(move |y| Edge { x, y }));
        Self::from_sorted_unique(nx, ny, edges)
    }

    fn from_sorted_unique(nx: usize, ny: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut g = Self::empty(nx, ny);
        for e in edges {
            g.adj_x[e.x].push(e.y);
            g.adj_y[e.y].push(e.x);
        }
        // edges arrive sorted by (x, y), so adj_x is sorted and adj_y receives
        // x-indices in ascending order as well
        g
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn num_edges(&self) -> usize {
        self.adj_x.iter().map(Vec::len).sum()
    }

    /// Sorted Y-neighbours of `x`.
    pub fn neighbors_x(&self, x: usize) -> &[usize] {
        &self.adj_x[x]
    }

    /// Sorted X-neighbours of `y`.
    pub fn neighbors_y(&self, y: usize) -> &[usize] {
        &self.adj_y[y]
    }

    pub fn neighbors(&self, v: VertexId) -> &[usize] {
        match v.side {
            Side::X => self.neighbors_x(v.index),
            Side::Y => self.neighbors_y(v.index),
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj_x.iter().chain(self.adj_y.iter()).map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        e.x < self.nx && self.adj_x[e.x].binary_search(&e.y).is_ok()
    }

    /// All edges in ascending (x, y) order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj_x.iter().enumerate().flat_map(|(x, ys)| ys.iter().map(move |&y| Edge { x, y }))
    }

    /// `|N(W)|` for a set of X indices.
    pub fn neighborhood_size(&self, xs: &[usize]) -> usize {
        let mut seen = vec![false; self.ny];
        let mut count = 0;
        for &x in xs {
            for &y in &self.adj_x[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                }
            }
        }
        count
    }

    /// The spanning subgraph with the given edges removed.
    pub fn without_edges(&self, removed: &Matching) -> Self {
        if removed.is_empty() {
            return self.clone();
        }
        Self::from_sorted_unique(self.nx, self.ny, self.edges().filter(|e| !removed.contains(*e)))
    }

    /// The spanning subgraph on `edges`, which must all belong to `self`.
    pub fn spanning_subgraph<I: IntoIterator<Item = Edge>>(&self, edges: I) -> Self {
        let set: BTreeSet<Edge> = edges.into_iter().collect();
        debug_assert!(set.iter().all(|&e| self.has_edge(e)));
        Self::from_sorted_unique(self.nx, self.ny, set)
    }
}

/// A set of edges, kept in ascending (x, y) order.
///
/// Whether the edges really form a matching, and whether they belong to a
/// given graph, is checked by [`is_matching`] and friends; a `Matching` read
/// from an untrusted certificate may be invalid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: BTreeSet<Edge>,
}

impl Matching {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.edges.insert(e)
    }

    pub fn remove(&mut self, e: Edge) -> bool {
        self.edges.remove(&e)
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    /// Whether no two edges share an endpoint.
    pub fn is_endpoint_disjoint(&self) -> bool {
        let mut xs = BTreeSet::new();
        let mut ys = BTreeSet::new();
        self.edges.iter().all(|e| xs.insert(e.x) && ys.insert(e.y))
    }

    pub fn covers_x(&self, x: usize) -> bool {
        self.edges.iter().any(|e| e.x == x)
    }

    pub fn covers_y(&self, y: usize) -> bool {
        self.edges.iter().any(|e| e.y == y)
    }

    /// The Y mate of `x`, assuming `self` is a matching.
    pub fn mate_of_x(&self, x: usize) -> Option<usize> {
        self.edges.iter().find(|e| e.x == x).map(|e| e.y)
    }

    pub fn is_disjoint_from(&self, other: &Matching) -> bool {
        self.edges.is_disjoint(&other.edges)
    }

    pub fn union(&self, other: &Matching) -> Matching {
        Matching { edges: self.edges.union(&other.edges).copied().collect() }
    }

    /// Keeps only edges whose X endpoint satisfies `keep`.
    pub fn filter_x(&self, mut keep: impl FnMut(usize) -> bool) -> Matching {
        self.iter().filter(|e| keep(e.x)).collect()
    }
}

impl FromIterator<Edge> for Matching {
    fn from_iter<T: IntoIterator<Item = Edge>>(iter: T) -> Self {
        Matching { edges: iter.into_iter().collect() }
    }
}

impl<'a> IntoIterator for &'a Matching {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.edges.iter()
    }
}

/// True iff `edges` are pairwise endpoint-disjoint and all present in `graph`.
pub fn is_matching(graph: &BipartiteGraph, edges: &[Edge]) -> bool {
    let set: Matching = edges.iter().copied().collect();
    set.len() == edges.len() && set.is_endpoint_disjoint() && set.iter().all(|e| graph.has_edge(e))
}

/// A graph together with a distinguished set `S` of X vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SdmInstance {
    graph: BipartiteGraph,
    s_set: Vec<usize>,
}

impl SdmInstance {
    /// Rejects out-of-range or repeated S entries; stores S sorted.
    pub fn new(graph: BipartiteGraph, s: impl IntoIterator<Item = usize>) -> Result<Self, GraphError> {
        let mut s_set: Vec<usize> = s.into_iter().collect();
        s_set.sort_unstable();
        for w in s_set.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::SDuplicate(w[0]));
            }
        }
        if let Some(&bad) = s_set.iter().find(|&&x| x >= graph.nx()) {
            return Err(GraphError::SOutOfRange { index: bad, nx: graph.nx() });
        }
        Ok(SdmInstance { graph, s_set })
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    /// S, sorted ascending.
    pub fn s_set(&self) -> &[usize] {
        &self.s_set
    }

    pub fn in_s(&self, x: usize) -> bool {
        self.s_set.binary_search(&x).is_ok()
    }

    /// `X − S`, sorted ascending.
    pub fn x_minus_s(&self) -> Vec<usize> {
        (0..self.graph.nx()).filter(|&x| !self.in_s(x)).collect()
    }
}

/// A candidate S-pair `(M1, M2)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SPair {
    pub m1: Matching,
    pub m2: Matching,
}

impl SPair {
    pub fn new(m1: Matching, m2: Matching) -> Self {
        SPair { m1, m2 }
    }
}

/// The first condition an S-pair candidate fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SPairViolation {
    #[error("M1 is not a matching")]
    M1NotMatching,
    #[error("M2 is not a matching")]
    M2NotMatching,
    #[error("M1 uses {0}, which is not an edge of the graph")]
    M1EdgeMissing(Edge),
    #[error("M2 uses {0}, which is not an edge of the graph")]
    M2EdgeMissing(Edge),
    #[error("not disjoint: {0} lies in both M1 and M2")]
    NotDisjoint(Edge),
    #[error("M1 does not saturate X: x{} is uncovered", .0 + 1)]
    XUnsaturated(usize),
    #[error("M2 does not saturate S: x{} is uncovered", .0 + 1)]
    SUnsaturated(usize),
}

/// Checks the three S-pair conditions (plus well-formedness of both
/// matchings) and reports the first violation.
pub fn verify_spair(instance: &SdmInstance, pair: &SPair) -> Result<(), SPairViolation> {
    let g = instance.graph();
    if !pair.m1.is_endpoint_disjoint() {
        return Err(SPairViolation::M1NotMatching);
    }
    if !pair.m2.is_endpoint_disjoint() {
        return Err(SPairViolation::M2NotMatching);
    }
    if let Some(e) = pair.m1.iter().find(|&e| !g.has_edge(e)) {
        return Err(SPairViolation::M1EdgeMissing(e));
    }
    if let Some(e) = pair.m2.iter().find(|&e| !g.has_edge(e)) {
        return Err(SPairViolation::M2EdgeMissing(e));
    }
    if let Some(e) = pair.m1.iter().find(|&e| pair.m2.contains(e)) {
        return Err(SPairViolation::NotDisjoint(e));
    }
    let mut covered = vec![false; g.nx()];
    for e in &pair.m1 {
        covered[e.x] = true;
    }
    if let Some(x) = covered.iter().position(|c| !c) {
        return Err(SPairViolation::XUnsaturated(x));
    }
    covered.iter_mut().for_each(|c| *c = false);
    for e in &pair.m2 {
        covered[e.x] = true;
    }
    if let Some(&x) = instance.s_set().iter().find(|&&x| !covered[x]) {
        return Err(SPairViolation::SUnsaturated(x));
    }
    Ok(())
}

/// An instance of the two-graph disjoint matchings problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmInstance {
    g1: BipartiteGraph,
    g2: BipartiteGraph,
}

impl DmInstance {
    pub fn new(g1: BipartiteGraph, g2: BipartiteGraph) -> Result<Self, GraphError> {
        if g1.nx() != g2.nx() || g1.ny() != g2.ny() {
            return Err(GraphError::VertexSetMismatch(g1.nx(), g1.ny(), g2.nx(), g2.ny()));
        }
        Ok(DmInstance { g1, g2 })
    }

    pub fn g1(&self) -> &BipartiteGraph {
        &self.g1
    }

    pub fn g2(&self) -> &BipartiteGraph {
        &self.g2
    }
}

/// Checks that `(m1, m2)` solves `dm`: each `mi` is a matching in `gi`
/// saturating X, and the two are disjoint.
pub fn verify_dm_solution(dm: &DmInstance, m1: &Matching, m2: &Matching) -> Result<(), String> {
    for (name, m, g) in [("M1", m1, dm.g1()), ("M2", m2, dm.g2())] {
        if !m.is_endpoint_disjoint() {
            return Err(format!("{name} is not a matching"));
        }
        if let Some(e) = m.iter().find(|&e| !g.has_edge(e)) {
            return Err(format!("{name} uses {e}, which is not an edge of its graph"));
        }
        if let Some(x) = (0..g.nx()).find(|&x| !m.covers_x(x)) {
            return Err(format!("{name} does not saturate X: x{} is uncovered", x + 1));
        }
    }
    if let Some(e) = m1.iter().find(|&e| m2.contains(e)) {
        return Err(format!("not disjoint: {e} lies in both M1 and M2"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(edges: &[(usize, usize)]) -> Matching {
        edges.iter().map(|&e| Edge::from(e)).collect()
    }

    #[test]
    fn validate_empty_graph() {
        let g = BipartiteGraph::new(1, 1, Vec::<Edge>::new()).unwrap();
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn validate_dedupes() {
        let g = BipartiteGraph::new(2, 2, [(0, 0), (0, 0), (1, 1)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![Edge::new(0, 0), Edge::new(1, 1)]);
    }

    #[test]
    fn validate_rejects_out_of_range() {
        let err = BipartiteGraph::new(1, 1, [(0, 5)]).unwrap_err();
        assert!(matches!(err, GraphError::YOutOfRange { y: 5, .. }));
        let err = BipartiteGraph::new(1, 1, [(3, 0)]).unwrap_err();
        assert!(matches!(err, GraphError::XOutOfRange { x: 3, .. }));
    }

    #[test]
    fn neighborhoods_are_symmetric() {
        let g = BipartiteGraph::new(3, 2, [(2, 0), (0, 1), (1, 0), (0, 0)]).unwrap();
        assert_eq!(g.neighbors_x(0), &[0, 1]);
        assert_eq!(g.neighbors_y(0), &[0, 1, 2]);
        assert_eq!(g.neighbors_y(1), &[0]);
        assert_eq!(g.max_degree(), 3);
    }

    #[test]
    fn is_matching_cases() {
        let k22 = BipartiteGraph::complete(2, 2);
        assert!(is_matching(&k22, &[Edge::new(0, 0), Edge::new(1, 1)]));
        assert!(!is_matching(&k22, &[Edge::new(0, 0), Edge::new(0, 1)]));
        assert!(!is_matching(&k22, &[Edge::new(0, 0), Edge::new(1, 0)]));
        let single = BipartiteGraph::new(2, 2, [(0, 0)]).unwrap();
        assert!(!is_matching(&single, &[Edge::new(1, 1)]));
        assert!(!is_matching(&single, &[Edge::new(0, 0), Edge::new(0, 0)]));
    }

    #[test]
    fn sdm_instance_rejects_bad_s() {
        let g = BipartiteGraph::complete(2, 2);
        assert_eq!(SdmInstance::new(g.clone(), [1, 1]).unwrap_err(), GraphError::SDuplicate(1));
        assert!(matches!(SdmInstance::new(g.clone(), [2]).unwrap_err(), GraphError::SOutOfRange { index: 2, .. }));
        let inst = SdmInstance::new(g, [1, 0]).unwrap();
        assert_eq!(inst.s_set(), &[0, 1]);
        assert!(inst.x_minus_s().is_empty());
    }

    #[test]
    fn verify_spair_not_disjoint() {
        let g = BipartiteGraph::new(1, 1, [(0, 0)]).unwrap();
        let inst = SdmInstance::new(g, [0]).unwrap();
        let pair = SPair::new(m(&[(0, 0)]), m(&[(0, 0)]));
        let err = verify_spair(&inst, &pair).unwrap_err();
        assert_eq!(err, SPairViolation::NotDisjoint(Edge::new(0, 0)));
        assert!(err.to_string().starts_with("not disjoint"));
    }

    #[test]
    fn verify_spair_star() {
        let g = BipartiteGraph::new(1, 2, [(0, 0), (0, 1)]).unwrap();
        let inst = SdmInstance::new(g, [0]).unwrap();
        assert_eq!(verify_spair(&inst, &SPair::new(m(&[(0, 0)]), m(&[(0, 1)]))), Ok(()));
        assert_eq!(verify_spair(&inst, &SPair::new(m(&[(0, 0)]), m(&[]))), Err(SPairViolation::SUnsaturated(0)));
    }

    #[test]
    fn verify_spair_empty_s_needs_only_m1() {
        let g = BipartiteGraph::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        let inst = SdmInstance::new(g, []).unwrap();
        assert_eq!(verify_spair(&inst, &SPair::new(m(&[(0, 0), (1, 1)]), m(&[]))), Ok(()));
        assert_eq!(verify_spair(&inst, &SPair::new(m(&[(0, 0)]), m(&[]))), Err(SPairViolation::XUnsaturated(1)));
    }

    #[test]
    fn verify_spair_rejects_foreign_edges() {
        let g = BipartiteGraph::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        let inst = SdmInstance::new(g, []).unwrap();
        assert_eq!(
            verify_spair(&inst, &SPair::new(m(&[(0, 1), (1, 0)]), m(&[]))),
            Err(SPairViolation::M1EdgeMissing(Edge::new(0, 1)))
        );
        assert_eq!(verify_spair(&inst, &SPair::new(m(&[(0, 0), (1, 0)]), m(&[]))), Err(SPairViolation::M1NotMatching));
    }

    #[test]
    fn dm_instance_requires_same_vertex_set() {
        let err = DmInstance::new(BipartiteGraph::empty(2, 2), BipartiteGraph::empty(2, 3)).unwrap_err();
        assert_eq!(err, GraphError::VertexSetMismatch(2, 2, 2, 3));
    }

    #[test]
    fn without_edges_removes_only_listed() {
        let g = BipartiteGraph::complete(2, 2);
        let h = g.without_edges(&m(&[(0, 1)]));
        assert_eq!(h.num_edges(), 3);
        assert!(!h.has_edge(Edge::new(0, 1)));
        assert_eq!(h.neighbors_y(1), &[1]);
    }
}
