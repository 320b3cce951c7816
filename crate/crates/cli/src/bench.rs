//! Cross-check suites: each runs a fixed, seeded family of instances
//! through two independent routes and counts agreements.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sdm_core::coloring::konig_color;
use sdm_core::lebensold::{k_disjoint_saturating, lebensold_condition, DEFAULT_SUBSET_LIMIT};
use sdm_core::matching::{x_saturating_certificate, HallCertificate};
use sdm_core::reductions::{
    decode_spair_to_assignment, encode_assignment_to_spair, extend_spair_to_dm, project_dm_to_spair,
    reduce_3sat_to_sdm, reduce_sdm_to_dm, true_false_pairs, CnfFormula, Literal,
};
use sdm_core::sdm::{count_spairs_exact, solve, solve_dm_exact, solve_exact, solve_poly_large_s, Budget, SolveConfig};
use sdm_core::{verify_dm_solution, verify_spair, BipartiteGraph, Edge, Matching, SPair, SdmInstance};

/// Suite names accepted by `bench --suite`, in run order.
pub const SUITES: [&str; 7] = ["oracle", "poly", "lebensold", "sat", "gadget", "dm", "konig"];

/// Enough for every graph in the exhaustive and random families below.
const ORACLE_LIMIT: usize = 30;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub instances: usize,
    pub agree: usize,
    /// Description of the first few disagreements.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if ok {
            self.agree += 1;
        } else if self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.instances > 0 && self.agree == self.instances
    }
}

pub fn run_suite(name: &str) -> Option<SuiteReport> {
    Some(match name {
        "oracle" => oracle(),
        "poly" => poly(),
        "lebensold" => lebensold(),
        "sat" => sat(),
        "gadget" => gadget(),
        "dm" => dm(),
        "konig" => konig(),
        _ => return None,
    })
}

fn graph_from_mask(nx: usize, ny: usize, mask: u32) -> BipartiteGraph {
    let edges = (0..nx * ny).filter(|b| mask >> b & 1 == 1).map(|b| Edge { x: b / ny, y: b % ny });
    BipartiteGraph::new(nx, ny, edges).expect("mask edges are in range")
}

fn subset(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

fn random_graph(rng: &mut ChaCha8Rng, nx: usize, ny: usize, density: f64) -> BipartiteGraph {
    let mut edges = Vec::new();
    for x in 0..nx {
        for y in 0..ny {
            if rng.gen_bool(density) {
                edges.push(Edge { x, y });
            }
        }
    }
    BipartiteGraph::new(nx, ny, edges).expect("edges are in range")
}

/// Every graph on 3 × 3 with every S ⊆ X, through the dispatcher.
fn oracle() -> SuiteReport {
    let mut r = SuiteReport::default();
    for mask in 0u32..1 << 9 {
        let g = graph_from_mask(3, 3, mask);
        for s_mask in 0u32..8 {
            let inst = SdmInstance::new(g.clone(), subset(s_mask, 3)).expect("valid S");
            let truth = count_spairs_exact(&inst, ORACLE_LIMIT).expect("small") > 0;
            let ok = match solve(&inst, &SolveConfig::default()) {
                Ok(out) => {
                    out.spair.is_some() == truth && out.spair.as_ref().is_none_or(|p| verify_spair(&inst, p).is_ok())
                }
                Err(_) => false,
            };
            r.record(ok, || format!("edges {mask:#011b}, S {:?}", inst.s_set()));
        }
    }
    r
}

/// The exhaustive family restricted to |S| >= |X| - 1, through the factor route.
fn poly() -> SuiteReport {
    let mut r = SuiteReport::default();
    for mask in 0u32..1 << 9 {
        let g = graph_from_mask(3, 3, mask);
        for s_mask in (0u32..8).filter(|m| m.count_ones() >= 2) {
            let inst = SdmInstance::new(g.clone(), subset(s_mask, 3)).expect("valid S");
            let truth = count_spairs_exact(&inst, ORACLE_LIMIT).expect("small") > 0;
            let ok = match solve_poly_large_s(&inst) {
                Ok(found) => found.is_some() == truth && found.as_ref().is_none_or(|p| verify_spair(&inst, p).is_ok()),
                Err(_) => false,
            };
            r.record(ok, || format!("edges {mask:#011b}, S {:?}", inst.s_set()));
        }
    }
    r
}

/// 200 random graphs with nx, ny <= 5, for k = 1, 2, 3.
fn lebensold() -> SuiteReport {
    let mut r = SuiteReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1eb0);
    for n in 0..200 {
        let nx = rng.gen_range(1..=5);
        let ny = rng.gen_range(1..=5);
        let p = rng.gen_range(0.3..=1.0);
        let g = random_graph(&mut rng, nx, ny, p);
        for k in 1..=3 {
            let verdict = lebensold_condition(&g, k, DEFAULT_SUBSET_LIMIT).expect("nx <= 5");
            let built = k_disjoint_saturating(&g, k);
            let mut ok = verdict.holds == built.is_some();
            if let Some(ms) = &built {
                ok &= ms.len() == k && ms.iter().all(|m| saturates_x(&g, m));
                ok &= (0..k).all(|a| (a + 1..k).all(|b| ms[a].is_disjoint_from(&ms[b])));
            }
            if k == 1 {
                let hall = matches!(x_saturating_certificate(&g), HallCertificate::Saturating(_));
                ok &= hall == verdict.holds;
            }
            r.record(ok, || format!("graph #{n} ({nx}x{ny}), k = {k}"));
        }
    }
    r
}

fn saturates_x(g: &BipartiteGraph, m: &Matching) -> bool {
    m.is_endpoint_disjoint() && m.iter().all(|e| g.has_edge(e)) && (0..g.nx()).all(|x| m.covers_x(x))
}

fn random_cnf(rng: &mut ChaCha8Rng) -> CnfFormula {
    let t = rng.gen_range(1..=3);
    let s = rng.gen_range(1..=3);
    let clauses = (0..s)
        .map(|_| {
            let arity = rng.gen_range(1..=3);
            (0..arity).map(|_| Literal { var: rng.gen_range(1..=t), positive: rng.gen_bool(0.5) }).collect()
        })
        .collect();
    CnfFormula::new(t, clauses).expect("generated literals are in range")
}

/// 500 random CNFs: satisfiability versus S-pair presence on the reduction,
/// with decode and encode round trips on yes-instances.
fn sat() -> SuiteReport {
    let mut r = SuiteReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x3547);
    for n in 0..500 {
        let f = random_cnf(&mut rng);
        let ok = (|| {
            let (inst, map) = reduce_3sat_to_sdm(&f).ok()?;
            let sat = f.brute_force_satisfying().is_some();
            let found = solve_exact(&inst, &mut Budget::unlimited()).ok()?;
            if sat != found.is_some() {
                return Some(false);
            }
            let Some(pair) = found else { return Some(true) };
            let a = decode_spair_to_assignment(&map, &pair).ok()?;
            let back = encode_assignment_to_spair(&f, &map, &a).ok()?;
            Some(f.is_satisfied_by(&a) && verify_spair(&inst, &pair).is_ok() && verify_spair(&inst, &back).is_ok())
        })()
        .unwrap_or(false);
        r.record(ok, || format!("formula #{n}: {f:?}"));
    }
    r
}

/// The s = 2 true and false pairs against the listed edge sets, and the two
/// S_i-pairs of each bare cycle.
fn gadget() -> SuiteReport {
    let mut r = SuiteReport::default();
    // two variables, two clauses: both cycles are C8
    let f = CnfFormula::new(2, vec![vec![Literal::pos(1)], vec![Literal::neg(2)]]).expect("valid");
    let (_, map) = reduce_3sat_to_sdm(&f).expect("s >= 1");
    for i in 1..=2 {
        let e =
            |pairs: &[(usize, usize)]| -> Matching { pairs.iter().map(|&(a, b)| map.cycle_edge(i, a, b)).collect() };
        let want_true = SPair::new(e(&[(1, 2), (3, 4), (5, 6), (7, 8)]), e(&[(2, 3), (6, 7)]));
        let want_false = SPair::new(e(&[(2, 3), (4, 5), (6, 7), (8, 1)]), e(&[(1, 2), (5, 6)]));
        let (tp, fp) = true_false_pairs(&map, i);
        r.record(tp == want_true, || format!("true pair of H_{i}: {tp:?}"));
        r.record(fp == want_false, || format!("false pair of H_{i}: {fp:?}"));

        let base = map.cycle_vertex(i, 2).index;
        let local = |e: Edge| Edge { x: e.x - base, y: e.y - base };
        let edges: Vec<Edge> = (1..=8).map(|j| local(map.cycle_edge(i, j, j + 1))).collect();
        let h = BipartiteGraph::new(4, 4, edges).expect("cycle edges are local");
        let s_i = [2, 6].map(|j| map.cycle_vertex(i, j).index - base);
        let inst = SdmInstance::new(h, s_i).expect("valid S");
        let count = count_spairs_exact(&inst, ORACLE_LIMIT);
        r.record(count == Ok(2), || format!("H_{i} with S_{i} has {count:?} S-pairs"));
    }
    r
}

/// 200 random instances with |S| < |X| - 1: S-pair presence versus DM
/// presence on the reduction, plus both certificate maps.
fn dm() -> SuiteReport {
    let mut r = SuiteReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xd3);
    for n in 0..200 {
        let nx: usize = rng.gen_range(2..=5);
        let ny = rng.gen_range(nx..=nx + 1);
        let p = rng.gen_range(0.3..0.8);
        let g = random_graph(&mut rng, nx, ny, p);
        let k = rng.gen_range(0..=nx - 2);
        let inst = SdmInstance::new(g, sample(&mut rng, nx, k).into_vec()).expect("valid S");
        let ok = (|| {
            let truth = count_spairs_exact(&inst, ORACLE_LIMIT).ok()? > 0;
            let dm = reduce_sdm_to_dm(&inst).ok()?;
            let found = solve_dm_exact(&dm, ORACLE_LIMIT).ok()?;
            if truth != found.is_some() {
                return Some(false);
            }
            let Some((m1, m2)) = found else { return Some(true) };
            let pair = project_dm_to_spair(&inst, &m1, &m2).ok()?;
            let (e1, e2) = extend_spair_to_dm(&inst, &pair).ok()?;
            Some(
                verify_dm_solution(&dm, &m1, &m2).is_ok()
                    && verify_spair(&inst, &pair).is_ok()
                    && verify_dm_solution(&dm, &e1, &e2).is_ok(),
            )
        })()
        .unwrap_or(false);
        r.record(ok, || format!("instance #{n} ({nx}x{ny}, S {:?})", inst.s_set()));
    }
    r
}

/// 1000 random graphs with maximum degree at most 5.
fn konig() -> SuiteReport {
    let mut r = SuiteReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c01);
    for n in 0..1000 {
        let nx = rng.gen_range(1..=8);
        let ny = rng.gen_range(1..=8);
        let p = rng.gen_range(0.1..=1.0);
        let g = cap_degree(&random_graph(&mut rng, nx, ny, p), 5);
        let c = konig_color(&g);
        let ok = g.max_degree() <= 5 && c.is_proper_for(&g) && c.colors_used() == g.max_degree();
        r.record(ok, || format!("graph #{n} ({nx}x{ny}, max degree {})", g.max_degree()));
    }
    r
}

/// Drops edges, in index order, that would push an endpoint past `cap`.
fn cap_degree(g: &BipartiteGraph, cap: usize) -> BipartiteGraph {
    let (mut dx, mut dy) = (vec![0; g.nx()], vec![0; g.ny()]);
    let kept: Vec<Edge> = g
        .edges()
        .filter(|e| {
            let keep = dx[e.x] < cap && dy[e.y] < cap;
            if keep {
                dx[e.x] += 1;
                dy[e.y] += 1;
            }
            keep
        })
        .collect();
    g.spanning_subgraph(kept)
}
