//! Proper edge colorings of bipartite graphs with Δ colors.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{BipartiteGraph, Edge, Matching, VertexId};

/// A map from edges to colors `1..=palette_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: BTreeMap<Edge, usize>,
    palette_size: usize,
}

impl EdgeColoring {
    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn color(&self, e: Edge) -> Option<usize> {
        self.colors.get(&e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, usize)> + '_ {
        self.colors.iter().map(|(&e, &c)| (e, c))
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut used: Vec<usize> = self.colors.values().copied().collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    }

    /// All edges of color `c`.
    pub fn class(&self, c: usize) -> Matching {
        self.iter().filter(|&(_, k)| k == c).map(|(e, _)| e).collect()
    }

    /// Independent check: exactly the edges of `graph` are colored, every
    /// color lies in `1..=palette_size`, and no two edges at a vertex share one.
    pub fn is_proper_for(&self, graph: &BipartiteGraph) -> bool {
        if self.colors.len() != graph.num_edges() || !graph.edges().all(|e| self.colors.contains_key(&e)) {
            return false;
        }
        if self.colors.values().any(|&c| c == 0 || c > self.palette_size) {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        self.iter().all(|(e, c)| seen.insert((VertexId::x(e.x), c)) && seen.insert((VertexId::y(e.y), c)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("two-coloring needs maximum degree at most 2, got {0}")]
    DegreeTooLarge(usize),
    #[error("anchor x{} has degree {degree}; it must have degree at most 1", .x + 1)]
    AnchorDegree { x: usize, degree: usize },
    #[error("anchor x{} is not a vertex of the graph", .0 + 1)]
    AnchorOutOfRange(usize),
}

/// König coloring by edge insertion: each new edge `xy` takes a color `a`
/// free at `x`; if `a` is busy at `y`, the `a`/`b` alternating chain from `y`
/// (with `b` free at `y`) is swapped first. In a bipartite graph the chain
/// never reaches `x`, so `a` becomes free at both ends.
pub fn konig_color(graph: &BipartiteGraph) -> EdgeColoring {
    let delta = graph.max_degree();
    // at_x[x][c] = Y mate of x along color c; at_y likewise
    let mut at_x = vec![vec![None::<usize>; delta + 1]; graph.nx()];
    let mut at_y = vec![vec![None::<usize>; delta + 1]; graph.ny()];
    let free = |slots: &[Option<usize>]| (1..=delta).find(|&c| slots[c].is_none()).expect("degree <= delta");

    for e in graph.edges() {
        let a = free(&at_x[e.x]);
        if at_y[e.y][a].is_some() {
            let b = free(&at_y[e.y]);
            // walk y -a- x1 -b- y2 -a- ... collecting (x, y, color)
            let mut chain = Vec::new();
            let mut on_y = true;
            let mut cur = e.y;
            let mut c = a;
            loop {
                let next = if on_y { at_y[cur][c] } else { at_x[cur][c] };
                let Some(next) = next else { break };
                let edge = if on_y { (next, cur) } else { (cur, next) };
                chain.push((edge.0, edge.1, c));
                cur = next;
                on_y = !on_y;
                c = if c == a { b } else { a };
            }
            for &(x, y, c) in &chain {
                at_x[x][c] = None;
                at_y[y][c] = None;
            }
            for &(x, y, c) in &chain {
                let swapped = if c == a { b } else { a };
                at_x[x][swapped] = Some(y);
                at_y[y][swapped] = Some(x);
            }
        }
        debug_assert!(at_x[e.x][a].is_none() && at_y[e.y][a].is_none());
        at_x[e.x][a] = Some(e.y);
        at_y[e.y][a] = Some(e.x);
    }

    let colors = at_x
        .iter()
        .enumerate()
        .flat_map(|(x, slots)| slots.iter().enumerate().filter_map(move |(c, y)| y.map(|y| (Edge { x, y }, c))))
        .collect();
    EdgeColoring { colors, palette_size: delta }
}

/// Two-colors a graph of maximum degree at most 2 by walking each path or
/// cycle, alternating 1 and 2. Paths start at their lowest-index end,
/// cycles at their lowest-index vertex (X before Y) heading towards its
/// lowest-index neighbour. If `anchor` has an incident edge, its component
/// is swapped as needed so that edge gets color 1.
pub fn two_color_with_anchor(graph: &BipartiteGraph, anchor: Option<usize>) -> Result<EdgeColoring, ColorError> {
    let delta = graph.max_degree();
    if delta > 2 {
        return Err(ColorError::DegreeTooLarge(delta));
    }
    if let Some(a) = anchor {
        if a >= graph.nx() {
            return Err(ColorError::AnchorOutOfRange(a));
        }
        let degree = graph.degree(VertexId::x(a));
        if degree > 1 {
            return Err(ColorError::AnchorDegree { x: a, degree });
        }
    }

    let nx = graph.nx();
    let vertex = |u: usize| if u < nx { VertexId::x(u) } else { VertexId::y(u - nx) };
    let incident = |u: usize| -> Vec<(Edge, usize)> {
        let v = vertex(u);
        graph
            .neighbors(v)
            .iter()
            .map(|&w| if u < nx { (Edge { x: u, y: w }, nx + w) } else { (Edge { x: w, y: u - nx }, w) })
            .collect()
    };

    let mut colors: BTreeMap<Edge, usize> = BTreeMap::new();
    let mut component: BTreeMap<Edge, usize> = BTreeMap::new();
    let mut components = 0;
    let total = nx + graph.ny();
    let mut walk = |start: usize, colors: &mut BTreeMap<Edge, usize>| {
        let mut cur = start;
        let mut c = 1;
        while let Some((e, next)) = incident(cur).into_iter().find(|(e, _)| !colors.contains_key(e)) {
            colors.insert(e, c);
            component.insert(e, components);
            c = 3 - c;
            cur = next;
        }
        components += 1;
    };
    for u in 0..total {
        if graph.degree(vertex(u)) == 1 && incident(u).iter().all(|(e, _)| !colors.contains_key(e)) {
            walk(u, &mut colors);
        }
    }
    for u in 0..total {
        if graph.degree(vertex(u)) == 2 && incident(u).iter().all(|(e, _)| !colors.contains_key(e)) {
            walk(u, &mut colors);
        }
    }

    if let Some(a) = anchor {
        if let Some(&y) = graph.neighbors_x(a).first() {
            let e = Edge { x: a, y };
            if colors[&e] == 2 {
                let comp = component[&e];
                for (edge, c) in colors.iter_mut() {
                    if component[edge] == comp {
                        *c = 3 - *c;
                    }
                }
            }
        }
    }
    Ok(EdgeColoring { colors, palette_size: delta })
}
