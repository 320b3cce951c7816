//! Maximum bipartite matching and Hall-condition certificates.

use crate::graph::{BipartiteGraph, Edge, Matching};

const INF: usize = usize::MAX;

/// Result of asking whether a graph has an X-saturating matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HallCertificate {
    /// A matching covering every X vertex.
    Saturating(Matching),
    /// A set `W ⊆ X` (sorted) with `|N(W)| < |W|`.
    Violator(Vec<usize>),
}

impl HallCertificate {
    pub fn is_saturating(&self) -> bool {
        matches!(self, HallCertificate::Saturating(_))
    }
}

struct State<'g> {
    g: &'g BipartiteGraph,
    mate_x: Vec<Option<usize>>,
    mate_y: Vec<Option<usize>>,
    dist: Vec<usize>,
    cursor: Vec<usize>,
}

impl<'g> State<'g> {
    fn new(g: &'g BipartiteGraph) -> Self {
        State {
            g,
            mate_x: vec![None; g.nx()],
            mate_y: vec![None; g.ny()],
            dist: vec![INF; g.nx()],
            cursor: vec![0; g.nx()],
        }
    }

    /// Layers X vertices by alternating distance from the free ones. Returns
    /// whether some free Y vertex is reachable.
    fn bfs(&mut self) -> bool {
        let mut queue = Vec::with_capacity(self.g.nx());
        for x in 0..self.g.nx() {
            if self.mate_x[x].is_none() {
                self.dist[x] = 0;
                queue.push(x);
            } else {
                self.dist[x] = INF;
            }
        }
        let mut found = false;
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &y in self.g.neighbors_x(x) {
                match self.mate_y[y] {
                    None => found = true,
                    Some(x2) if self.dist[x2] == INF => {
                        self.dist[x2] = self.dist[x] + 1;
                        queue.push(x2);
                    }
                    Some(_) => {}
                }
            }
        }
        found
    }

    /// Layered augmenting-path search from a free X vertex, without recursion.
    fn augment(&mut self, start: usize) -> bool {
        let mut stack = vec![start];
        while let Some(&x) = stack.last() {
            let adj = self.g.neighbors_x(x);
            if self.cursor[x] == adj.len() {
                self.dist[x] = INF;
                stack.pop();
                if let Some(&parent) = stack.last() {
                    self.cursor[parent] += 1;
                }
                continue;
            }
            let y = adj[self.cursor[x]];
            match self.mate_y[y] {
                None => {
                    for &sx in &stack {
                        let sy = self.g.neighbors_x(sx)[self.cursor[sx]];
                        self.mate_x[sx] = Some(sy);
                        self.mate_y[sy] = Some(sx);
                    }
                    return true;
                }
                Some(x2) if self.dist[x2] != INF && self.dist[x2] == self.dist[x] + 1 => stack.push(x2),
                Some(_) => self.cursor[x] += 1,
            }
        }
        false
    }

    fn run(mut self) -> Self {
        while self.bfs() {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            for x in 0..self.g.nx() {
                if self.mate_x[x].is_none() {
                    self.augment(x);
                }
            }
        }
        self
    }

    fn matching(&self) -> Matching {
        self.mate_x.iter().enumerate().filter_map(|(x, y)| y.map(|y| Edge { x, y })).collect()
    }
}

/// A maximum-cardinality matching. X vertices and neighbour lists are
/// scanned in ascending order, so the result is a fixed function of the graph.
pub fn max_matching(graph: &BipartiteGraph) -> Matching {
    State::new(graph).run().matching()
}

/// Either a matching saturating X, or a Hall violator `W` grown by
/// alternating paths from the lowest-index exposed X vertex.
pub fn x_saturating_certificate(graph: &BipartiteGraph) -> HallCertificate {
    let st = State::new(graph).run();
    let Some(root) = st.mate_x.iter().position(Option::is_none) else {
        return HallCertificate::Saturating(st.matching());
    };
    let mut in_w = vec![false; graph.nx()];
    let mut seen_y = vec![false; graph.ny()];
    in_w[root] = true;
    let mut queue = vec![root];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &y in graph.neighbors_x(x) {
            if seen_y[y] {
                continue;
            }
            seen_y[y] = true;
            // y exposed here would mean an augmenting path, which a maximum
            // matching cannot have
            let x2 = st.mate_y[y].expect("maximum matching has no augmenting path");
            if !in_w[x2] {
                in_w[x2] = true;
                queue.push(x2);
            }
        }
    }
    queue.sort_unstable();
    HallCertificate::Violator(queue)
}

/// Whether `graph` has a matching saturating X.
pub fn has_x_saturating_matching(graph: &BipartiteGraph) -> bool {
    graph.nx() <= graph.ny() && max_matching(graph).len() == graph.nx()
}
