//! Bipartite (g,f)-factors via feasible flow.

use thiserror::Error;

use crate::flow::{feasible_flow, FlowNetwork};
use crate::graph::{BipartiteGraph, Edge, Side, VertexId};

/// Per-vertex degree bounds `g(v) <= d_H(v) <= f(v)`. Every vertex of the
/// graph must be covered explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBounds {
    pub g_x: Vec<usize>,
    pub f_x: Vec<usize>,
    pub g_y: Vec<usize>,
    pub f_y: Vec<usize>,
}

impl DegreeBounds {
    /// Same `(g, f)` on every X vertex and the same `(g, f)` on every Y vertex.
    pub fn uniform(nx: usize, ny: usize, x: (usize, usize), y: (usize, usize)) -> Self {
        DegreeBounds { g_x: vec![x.0; nx], f_x: vec![x.1; nx], g_y: vec![y.0; ny], f_y: vec![y.1; ny] }
    }

    pub fn lower(&self, v: VertexId) -> usize {
        match v.side {
            Side::X => self.g_x[v.index],
            Side::Y => self.g_y[v.index],
        }
    }

    pub fn upper(&self, v: VertexId) -> usize {
        match v.side {
            Side::X => self.f_x[v.index],
            Side::Y => self.f_y[v.index],
        }
    }

    /// Checks coverage of `graph` and `g <= f` everywhere.
    pub fn validate(&self, graph: &BipartiteGraph) -> Result<(), FactorError> {
        for (side, n, len) in [
            (Side::X, graph.nx(), self.g_x.len()),
            (Side::X, graph.nx(), self.f_x.len()),
            (Side::Y, graph.ny(), self.g_y.len()),
            (Side::Y, graph.ny(), self.f_y.len()),
        ] {
            if len != n {
                return Err(FactorError::Coverage { side, expected: n, got: len });
            }
        }
        let all = (0..graph.nx()).map(VertexId::x).chain((0..graph.ny()).map(VertexId::y));
        for v in all {
            let (g, f) = (self.lower(v), self.upper(v));
            if g > f {
                return Err(FactorError::Inverted { vertex: v, g, f });
            }
        }
        Ok(())
    }

    /// Whether `h` meets the bounds at every vertex.
    pub fn admits(&self, h: &BipartiteGraph) -> bool {
        let ok = |v: VertexId| {
            let d = h.degree(v);
            self.lower(v) <= d && d <= self.upper(v)
        };
        (0..h.nx()).map(VertexId::x).all(ok) && (0..h.ny()).map(VertexId::y).all(ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("degree bounds for side {side:?} cover {got} vertices, graph has {expected}")]
    Coverage { side: Side, expected: usize, got: usize },
    #[error("vertex {vertex}: lower bound {g} exceeds upper bound {f}")]
    Inverted { vertex: VertexId, g: usize, f: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorResult {
    /// A spanning subgraph meeting every bound.
    Factor(BipartiteGraph),
    Infeasible,
}

impl FactorResult {
    pub fn factor(self) -> Option<BipartiteGraph> {
        match self {
            FactorResult::Factor(h) => Some(h),
            FactorResult::Infeasible => None,
        }
    }
}

/// Finds a (g,f)-factor of a bipartite graph.
///
/// Network: `source -> x` with bounds `[g(x), f(x)]`, each edge `x -> y`
/// with `[0, 1]`, `y -> sink` with `[g(y), f(y)]`. Factor edges are the
/// edge arcs carrying flow.
pub fn gf_factor(graph: &BipartiteGraph, bounds: &DegreeBounds) -> Result<FactorResult, FactorError> {
    bounds.validate(graph)?;
    let (nx, ny) = (graph.nx(), graph.ny());
    let source = 0;
    let sink = nx + ny + 1;
    let mut net = FlowNetwork::new(nx + ny + 2);
    for x in 0..nx {
        net.add_arc(source, 1 + x, bounds.g_x[x] as u64, bounds.f_x[x] as u64);
    }
    let edges: Vec<Edge> = graph.edges().collect();
    let first_edge_arc = net.arcs().len();
    for e in &edges {
        net.add_arc(1 + e.x, 1 + nx + e.y, 0, 1);
    }
    for y in 0..ny {
        net.add_arc(1 + nx + y, sink, bounds.g_y[y] as u64, bounds.f_y[y] as u64);
    }
    let flow = feasible_flow(&net, source, sink).expect("factor network is well formed");
    Ok(match flow {
        None => FactorResult::Infeasible,
        Some(flow) => {
            let chosen = edges.iter().zip(&flow[first_edge_arc..]).filter(|(_, &f)| f == 1).map(|(&e, _)| e);
            FactorResult::Factor(graph.spanning_subgraph(chosen))
        }
    })
}
