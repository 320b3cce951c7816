mod common;

use common::{all_graphs, brute_hall, brute_max_matching, random_graph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdm_core::format::{parse_graph, write_graph};
use sdm_core::matching::{max_matching, x_saturating_certificate, HallCertificate};
use sdm_core::{is_matching, BipartiteGraph, Edge};

fn check_certificate(g: &BipartiteGraph) {
    match x_saturating_certificate(g) {
        HallCertificate::Saturating(m) => {
            assert_eq!(m.len(), g.nx());
            assert!(is_matching(g, &m.iter().collect::<Vec<_>>()));
            assert!(brute_hall(g));
        }
        HallCertificate::Violator(w) => {
            assert!(!w.is_empty());
            assert!(g.neighborhood_size(&w) < w.len(), "{w:?} is not a violator");
            assert!(!brute_hall(g));
        }
    }
}

#[test]
fn max_matching_is_maximum_on_all_small_graphs() {
    for (nx, ny) in [(1, 3), (2, 2), (2, 3), (3, 2), (3, 3)] {
        for g in all_graphs(nx, ny) {
            let m = max_matching(&g);
            assert!(is_matching(&g, &m.iter().collect::<Vec<_>>()));
            assert_eq!(m.len(), brute_max_matching(&g), "{g:?}");
            check_certificate(&g);
        }
    }
}

#[test]
fn max_matching_is_maximum_on_random_4x4() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, 4, 4, p);
        assert_eq!(max_matching(&g).len(), brute_max_matching(&g));
        check_certificate(&g);
    }
}

#[test]
fn determinism_under_reserialization() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let g = random_graph(&mut rng, 6, 7, 0.4);
        let again = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(max_matching(&g), max_matching(&again));
    }
}

/// The extension graph from the SDM-to-DM proof: complete between `X − S`
/// and the Y vertices left free by `M2`, minus the `M1` edges.
#[test]
fn extension_graph_is_always_saturable() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..300 {
        let free_x = rng.gen_range(2..=6usize);
        let free_y = rng.gen_range(free_x..=free_x + 2);
        // M1 removes at most one edge per free X vertex, at distinct Y
        let mut ys: Vec<usize> = (0..free_y).collect();
        let mut removed = Vec::new();
        for x in 0..free_x {
            if rng.gen_bool(0.7) && !ys.is_empty() {
                let y = ys.swap_remove(rng.gen_range(0..ys.len()));
                removed.push(Edge::new(x, y));
            }
        }
        let edges =
            (0..free_x).flat_map(|x| (0..free_y).map(move |y| Edge::new(x, y))).filter(|e| !removed.contains(e));
        let h = BipartiteGraph::new(free_x, free_y, edges).unwrap();
        assert!(x_saturating_certificate(&h).is_saturating());
        assert!(brute_hall(&h));
    }
}

proptest! {
    #[test]
    fn violator_or_saturating(nx in 0usize..6, ny in 0usize..6, bits in any::<u64>()) {
        let edges = (0..nx * ny).filter(|b| bits >> b & 1 == 1).map(|b| Edge::new(b / ny.max(1), b % ny.max(1)));
        let g = BipartiteGraph::new(nx, ny, edges).unwrap();
        check_certificate(&g);
    }
}
