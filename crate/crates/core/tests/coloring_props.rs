mod common;

use common::random_graph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdm_core::coloring::{konig_color, two_color_with_anchor};
use sdm_core::factor::{gf_factor, DegreeBounds};
use sdm_core::{BipartiteGraph, Edge, VertexId};

/// Drops edges until every vertex has degree at most `cap`.
fn cap_degree(g: &BipartiteGraph, cap: usize) -> BipartiteGraph {
    let mut dx = vec![0; g.nx()];
    let mut dy = vec![0; g.ny()];
    let kept: Vec<Edge> = g
        .edges()
        .filter(|e| {
            if dx[e.x] < cap && dy[e.y] < cap {
                dx[e.x] += 1;
                dy[e.y] += 1;
                true
            } else {
                false
            }
        })
        .collect();
    BipartiteGraph::new(g.nx(), g.ny(), kept).unwrap()
}

#[test]
fn random_degree_four_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut seen_four = 0;
    for _ in 0..200 {
        let g = cap_degree(&random_graph(&mut rng, 10, 10, 0.5), 4);
        let col = konig_color(&g);
        assert!(col.is_proper_for(&g));
        assert_eq!(col.palette_size(), g.max_degree());
        assert_eq!(col.colors_used(), g.max_degree());
        if g.max_degree() == 4 {
            seen_four += 1;
        }
    }
    assert!(seen_four > 100);
}

#[test]
fn factor_for_large_s_touches_both_colors_at_s() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut checked = 0;
    for _ in 0..400 {
        let nx = rng.gen_range(2..=6);
        let ny = rng.gen_range(nx..=nx + 4);
        let g = random_graph(&mut rng, nx, ny, 0.6);
        let free = rng.gen_range(0..nx);
        let f_x: Vec<usize> = (0..nx).map(|x| if x == free { 1 } else { 2 }).collect();
        let b = DegreeBounds { g_x: f_x.clone(), f_x, g_y: vec![0; ny], f_y: vec![2; ny] };
        let Some(h) = gf_factor(&g, &b).unwrap().factor() else { continue };
        let col = two_color_with_anchor(&h, Some(free)).unwrap();
        assert!(col.is_proper_for(&h));
        for x in (0..nx).filter(|&x| x != free) {
            let mut cs: Vec<usize> = h.neighbors_x(x).iter().map(|&y| col.color(Edge::new(x, y)).unwrap()).collect();
            cs.sort_unstable();
            assert_eq!(cs, vec![1, 2]);
        }
        let y = h.neighbors_x(free)[0];
        assert_eq!(col.color(Edge::new(free, y)), Some(1));
        checked += 1;
    }
    assert!(checked > 50, "only {checked} feasible factors");
}

proptest! {
    #[test]
    fn konig_is_tight(nx in 1usize..7, ny in 1usize..7, bits in any::<u64>()) {
        let edges = (0..nx * ny).filter(|b| bits >> (b % 64) & 1 == 1).map(|b| (b / ny, b % ny));
        let g = BipartiteGraph::new(nx, ny, edges).unwrap();
        let col = konig_color(&g);
        prop_assert!(col.is_proper_for(&g));
        prop_assert_eq!(col.palette_size(), g.max_degree());
        prop_assert_eq!(col.colors_used(), g.max_degree());
        for c in 1..=col.palette_size() {
            prop_assert!(col.class(c).is_endpoint_disjoint());
        }
    }

    #[test]
    fn two_coloring_partitions_into_matchings(bits in any::<u32>(), anchor in 0usize..5) {
        let g = cap_degree(&BipartiteGraph::new(5, 5, (0..25).filter(|b| bits >> b & 1 == 1).map(|b| (b / 5, b % 5))).unwrap(), 2);
        let anchor = (g.degree(VertexId::x(anchor)) <= 1).then_some(anchor);
        let col = two_color_with_anchor(&g, anchor).unwrap();
        prop_assert!(col.is_proper_for(&g));
        let (a, b) = (col.class(1), col.class(2));
        prop_assert!(a.is_endpoint_disjoint() && b.is_endpoint_disjoint());
        prop_assert_eq!(a.len() + b.len(), g.num_edges());
        if let Some(x) = anchor {
            if let Some(&y) = g.neighbors_x(x).first() {
                prop_assert_eq!(col.color(Edge::new(x, y)), Some(1));
            }
        }
    }
}
