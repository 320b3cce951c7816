use proptest::prelude::*;
use sdm_core::format::{parse_instance, parse_solution, write_instance, write_solution, Solution};
use sdm_core::{BipartiteGraph, Edge, SPair, SdmInstance};

fn instance_strategy() -> impl Strategy<Value = SdmInstance> {
    (0usize..7, 1usize..7).prop_flat_map(|(nx, ny)| {
        (prop::collection::vec((0..nx.max(1), 0..ny), 0..20), prop::collection::btree_set(0..nx.max(1), 0..=nx))
            .prop_map(move |(edges, s)| {
                let edges: Vec<_> = if nx == 0 { vec![] } else { edges };
                let s: Vec<usize> = if nx == 0 { vec![] } else { s.into_iter().collect() };
                SdmInstance::new(BipartiteGraph::new(nx, ny, edges).unwrap(), s).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn instance_round_trip(inst in instance_strategy()) {
        let text = write_instance(&inst);
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn edge_order_does_not_change_text(inst in instance_strategy(), seed in any::<u64>()) {
        let mut edges: Vec<Edge> = inst.graph().edges().collect();
        let n = edges.len();
        if n > 1 {
            edges.rotate_left((seed as usize) % n);
            edges.reverse();
        }
        let g = BipartiteGraph::new(inst.graph().nx(), inst.graph().ny(), edges).unwrap();
        let other = SdmInstance::new(g, inst.s_set().iter().rev().copied()).unwrap();
        prop_assert_eq!(write_instance(&other), write_instance(&inst));
    }

    #[test]
    fn solution_round_trip(a in prop::collection::btree_set((0usize..9, 0usize..9), 0..6),
                           b in prop::collection::btree_set((0usize..9, 0usize..9), 0..6)) {
        let pair = SPair::new(a.into_iter().map(Edge::from).collect(), b.into_iter().map(Edge::from).collect());
        let sol = Solution::Yes(pair);
        prop_assert_eq!(parse_solution(&write_solution(&sol)).unwrap(), sol);
    }
}
