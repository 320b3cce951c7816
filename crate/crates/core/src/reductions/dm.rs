//! SDM to DM: `G1 = G`, `G2 = G` plus every edge from `X − S` to `Y`.

use super::ReductionError;
use crate::graph::{verify_dm_solution, verify_spair, BipartiteGraph, DmInstance, Edge, Matching, SPair, SdmInstance};
use crate::matching::max_matching;

fn require_small_s(instance: &SdmInstance) -> Result<(), ReductionError> {
    let (s, nx) = (instance.s_set().len(), instance.graph().nx());
    if s + 1 >= nx {
        return Err(ReductionError::SNotSmall { s, nx });
    }
    Ok(())
}

/// Needs `|S| < |X| - 1`; larger `S` belongs to the factor-based solver.
pub fn reduce_sdm_to_dm(instance: &SdmInstance) -> Result<DmInstance, ReductionError> {
    require_small_s(instance)?;
    let g = instance.graph();
    let added = instance.x_minus_s().into_iter().flat_map(|x| (0..g.ny()).map(move |y| Edge { x, y }));
    let g2 = BipartiteGraph::new(g.nx(), g.ny(), g.edges().chain(added))?;
    Ok(DmInstance::new(g.clone(), g2)?)
}

/// Keeps `M1` and the edges of `M2` whose X endpoint is in `S`.
pub fn project_dm_to_spair(instance: &SdmInstance, m1: &Matching, m2: &Matching) -> Result<SPair, ReductionError> {
    let dm = reduce_sdm_to_dm(instance)?;
    verify_dm_solution(&dm, m1, m2).map_err(ReductionError::InvalidDmSolution)?;
    Ok(SPair::new(m1.clone(), m2.filter_x(|x| instance.in_s(x))))
}

/// Grows `M2` to saturate X. With `Y'` the Y vertices not used by `M2`
/// (restricted to `S`), the complete bigraph on `(X − S) ∪ Y'` minus `M1`
/// satisfies Hall's condition whenever `|Y| >= |X|` and `|X − S| >= 2`, so
/// a matching of `X − S` into `Y'` avoiding `M1` always exists.
pub fn extend_spair_to_dm(instance: &SdmInstance, pair: &SPair) -> Result<(Matching, Matching), ReductionError> {
    require_small_s(instance)?;
    let g = instance.graph();
    if g.ny() < g.nx() {
        return Err(ReductionError::TooFewY { nx: g.nx(), ny: g.ny() });
    }
    verify_spair(instance, pair).map_err(ReductionError::InvalidSPair)?;

    let m2_on_s = pair.m2.filter_x(|x| instance.in_s(x));
    let free_x = instance.x_minus_s();
    let mut y_used = vec![false; g.ny()];
    for e in &m2_on_s {
        y_used[e.y] = true;
    }
    let free_y: Vec<usize> = (0..g.ny()).filter(|&y| !y_used[y]).collect();
    let local_edges = free_x.iter().enumerate().flat_map(|(a, &x)| {
        free_y
            .iter()
            .enumerate()
            .filter(move |&(_, &y)| !pair.m1.contains(Edge { x, y }))
            .map(move |(b, _)| Edge { x: a, y: b })
    });
    let h = BipartiteGraph::new(free_x.len(), free_y.len(), local_edges)?;
    let extra = max_matching(&h);
    assert_eq!(extra.len(), free_x.len(), "Hall's condition holds on the extension graph");

    let mut m2 = m2_on_s;
    for e in &extra {
        m2.insert(Edge { x: free_x[e.x], y: free_y[e.y] });
    }
    Ok((pair.m1.clone(), m2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(nx: usize, ny: usize, edges: &[(usize, usize)], s: &[usize]) -> SdmInstance {
        SdmInstance::new(BipartiteGraph::new(nx, ny, edges.iter().copied()).unwrap(), s.iter().copied()).unwrap()
    }

    #[test]
    fn edgeless_with_empty_s_gives_complete_g2() {
        let dm = reduce_sdm_to_dm(&inst(3, 3, &[], &[])).unwrap();
        assert_eq!(dm.g1().num_edges(), 0);
        assert_eq!(dm.g2(), &BipartiteGraph::complete(3, 3));
    }

    #[test]
    fn only_x_minus_s_gains_edges() {
        let dm = reduce_sdm_to_dm(&inst(3, 3, &[(0, 1)], &[0])).unwrap();
        assert_eq!(dm.g2().neighbors_x(0), &[1]);
        assert_eq!(dm.g2().neighbors_x(1), &[0, 1, 2]);
        assert_eq!(dm.g2().neighbors_x(2), &[0, 1, 2]);
    }

    #[test]
    fn precondition() {
        assert_eq!(reduce_sdm_to_dm(&inst(3, 3, &[], &[0, 1])).unwrap_err(), ReductionError::SNotSmall { s: 2, nx: 3 });
    }

    #[test]
    fn projection_drops_added_edges() {
        let i = inst(3, 3, &[(0, 0), (0, 1), (1, 1), (2, 2)], &[0]);
        let m1: Matching = [(0, 0), (1, 1), (2, 2)].into_iter().map(Edge::from).collect();
        let m2: Matching = [(0, 1), (1, 0), (2, 1)].into_iter().map(Edge::from).collect();
        assert!(project_dm_to_spair(&i, &m1, &m2).is_err(), "M2 reuses y1");
        let m2: Matching = [(0, 1), (1, 2), (2, 0)].into_iter().map(Edge::from).collect();
        let p = project_dm_to_spair(&i, &m1, &m2).unwrap();
        assert_eq!(p.m2, [Edge::new(0, 1)].into_iter().collect());
    }

    #[test]
    fn extension_from_empty_s() {
        let i = inst(2, 4, &[(0, 0), (1, 1)], &[]);
        let m1: Matching = [(0, 0), (1, 1)].into_iter().map(Edge::from).collect();
        let (n1, n2) = extend_spair_to_dm(&i, &SPair::new(m1.clone(), Matching::new())).unwrap();
        assert_eq!(n1, m1);
        let dm = reduce_sdm_to_dm(&i).unwrap();
        assert_eq!(verify_dm_solution(&dm, &n1, &n2), Ok(()));
    }

    #[test]
    fn extension_needs_enough_y() {
        let i = inst(3, 2, &[(0, 0), (1, 1)], &[]);
        assert_eq!(extend_spair_to_dm(&i, &SPair::default()).unwrap_err(), ReductionError::TooFewY { nx: 3, ny: 2 });
    }
}
