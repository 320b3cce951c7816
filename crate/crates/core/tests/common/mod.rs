//! Brute-force oracles and instance generators shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sdm_core::{BipartiteGraph, Edge};

/// Every graph on `nx × ny`, indexed by the bitmask of its edge set
/// (bit `x * ny + y`).
pub fn all_graphs(nx: usize, ny: usize) -> impl Iterator<Item = BipartiteGraph> {
    let m = nx * ny;
    (0u32..1 << m).map(move |mask| graph_from_mask(nx, ny, mask))
}

pub fn graph_from_mask(nx: usize, ny: usize, mask: u32) -> BipartiteGraph {
    let edges = (0..nx * ny).filter(|b| mask >> b & 1 == 1).map(|b| Edge::new(b / ny, b % ny));
    BipartiteGraph::new(nx, ny, edges).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, nx: usize, ny: usize, density: f64) -> BipartiteGraph {
    let mut edges = Vec::new();
    for x in 0..nx {
        for y in 0..ny {
            if rng.gen_bool(density) {
                edges.push(Edge::new(x, y));
            }
        }
    }
    BipartiteGraph::new(nx, ny, edges).unwrap()
}

/// Maximum matching size by scanning all edge subsets.
pub fn brute_max_matching(g: &BipartiteGraph) -> usize {
    let edges: Vec<Edge> = g.edges().collect();
    assert!(edges.len() <= 20);
    let mut best = 0;
    for mask in 0u32..1 << edges.len() {
        let mut xs = 0u64;
        let mut ys = 0u64;
        let mut ok = true;
        for (i, e) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if xs >> e.x & 1 == 1 || ys >> e.y & 1 == 1 {
                    ok = false;
                    break;
                }
                xs |= 1 << e.x;
                ys |= 1 << e.y;
            }
        }
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// Hall's condition by checking every subset of X.
pub fn brute_hall(g: &BipartiteGraph) -> bool {
    (1u32..1 << g.nx()).all(|w| {
        let xs: Vec<usize> = (0..g.nx()).filter(|&i| w >> i & 1 == 1).collect();
        g.neighborhood_size(&xs) >= xs.len()
    })
}

/// Does some edge subset meet the given per-vertex degree bounds?
pub fn brute_factor_exists(g: &BipartiteGraph, lo_x: &[usize], hi_x: &[usize], lo_y: &[usize], hi_y: &[usize]) -> bool {
    let edges: Vec<Edge> = g.edges().collect();
    (0u32..1 << edges.len()).any(|mask| {
        let mut dx = vec![0; g.nx()];
        let mut dy = vec![0; g.ny()];
        for (i, e) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                dx[e.x] += 1;
                dy[e.y] += 1;
            }
        }
        (0..g.nx()).all(|x| lo_x[x] <= dx[x] && dx[x] <= hi_x[x])
            && (0..g.ny()).all(|y| lo_y[y] <= dy[y] && dy[y] <= hi_y[y])
    })
}
