//! 3SAT to SDM.
//!
//! Variable `θ_i` becomes a cycle `H_i = v_{i,1} … v_{i,4s}` (even `j` in X,
//! odd `j` in Y; `S_i` is `j ≡ 2 mod 4`). Clause `c_k` becomes an edge
//! `w_k z_k` with `w_k ∈ S`, plus an edge from `w_k` to `v_{i,4k-3}` for
//! each positive occurrence of `θ_i` and to `v_{i,4k-1}` for each negative
//! one. Cycle X vertices get no other edges, so every S-pair restricts to
//! one of exactly two S_i-pairs on each `H_i` ("true" and "false").
//!
//! Numbering: variable `i` owns X and Y indices `base_i .. base_i + 2s`
//! with `v_{i,2m} = x(base_i + m - 1)` and `v_{i,2m-1} = y(base_i + m - 1)`;
//! the default layout puts cycles first, variable-major, then one X and one
//! Y index per clause.

use std::fmt::Write as _;

use super::cnf::{Assignment, CnfFormula};
use super::ReductionError;
use crate::graph::{BipartiteGraph, Edge, Matching, SPair, SdmInstance, Side, VertexId};

/// Where each gadget vertex of a reduced instance lives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetMap {
    s: usize,
    t: usize,
    cycle_base: Vec<usize>,
    clause_w: Vec<usize>,
    clause_z: Vec<usize>,
}

impl GadgetMap {
    /// The standard layout for `t` variables and `s` clauses.
    pub fn standard(t: usize, s: usize) -> Self {
        let cycles = 2 * s * t;
        GadgetMap {
            s,
            t,
            cycle_base: (0..t).map(|i| 2 * s * i).collect(),
            clause_w: (0..s).map(|k| cycles + k).collect(),
            clause_z: (0..s).map(|k| cycles + k).collect(),
        }
    }

    /// Number of clauses.
    pub fn num_clauses(&self) -> usize {
        self.s
    }

    /// Number of variables.
    pub fn num_vars(&self) -> usize {
        self.t
    }

    pub fn cycle_len(&self) -> usize {
        4 * self.s
    }

    /// `v_{i,j}` for 1-based `i` and `j ∈ 1..=4s`.
    pub fn cycle_vertex(&self, i: usize, j: usize) -> VertexId {
        debug_assert!((1..=self.t).contains(&i) && (1..=self.cycle_len()).contains(&j));
        let base = self.cycle_base[i - 1];
        if j.is_multiple_of(2) {
            VertexId::x(base + j / 2 - 1)
        } else {
            VertexId::y(base + (j - 1) / 2)
        }
    }

    /// `(w_k, z_k)` for 1-based `k`.
    pub fn clause_vertices(&self, k: usize) -> (VertexId, VertexId) {
        (VertexId::x(self.clause_w[k - 1]), VertexId::y(self.clause_z[k - 1]))
    }

    /// The edge `v_{i,a} v_{i,b}`, where `a` and `b` have different parity.
    /// Indices wrap around the cycle.
    pub fn cycle_edge(&self, i: usize, a: usize, b: usize) -> Edge {
        let n = self.cycle_len();
        let wrap = |j: usize| (j + n - 1) % n + 1;
        let (p, q) = (self.cycle_vertex(i, wrap(a)), self.cycle_vertex(i, wrap(b)));
        match (p.side, q.side) {
            (Side::X, Side::Y) => Edge { x: p.index, y: q.index },
            (Side::Y, Side::X) => Edge { x: q.index, y: p.index },
            _ => panic!("v_{{{i},{a}}} and v_{{{i},{b}}} are on the same side"),
        }
    }

    /// The edge from `w_k` to the cycle vertex `v_{i,j}`.
    fn literal_edge(&self, k: usize, i: usize, j: usize) -> Edge {
        let w = self.clause_vertices(k).0;
        let v = self.cycle_vertex(i, j);
        debug_assert_eq!(v.side, Side::Y);
        Edge { x: w.index, y: v.index }
    }

    /// X indices of `H_i`.
    fn cycle_x(&self, i: usize) -> impl Iterator<Item = usize> {
        let base = self.cycle_base[i - 1];
        base..base + 2 * self.s
    }

    /// The constructed `S`: all `v_{i,j}` with `j ≡ 2 (mod 4)` and all `w_k`.
    pub fn s_set(&self) -> Vec<usize> {
        let mut s: Vec<usize> = (1..=self.t)
            .flat_map(|i| (1..=self.s).map(move |l| (i, 4 * l - 2)))
            .map(|(i, j)| self.cycle_vertex(i, j).index)
            .chain(self.clause_w.iter().copied())
            .collect();
        s.sort_unstable();
        s
    }

    fn extent(&self) -> (usize, usize) {
        let top = |v: &[usize]| v.iter().map(|&b| b + 1).max().unwrap_or(0);
        let cyc = self.cycle_base.iter().map(|&b| b + 2 * self.s).max().unwrap_or(0);
        (cyc.max(top(&self.clause_w)), cyc.max(top(&self.clause_z)))
    }
}

/// Builds the SDM instance for `formula`. Needs at least one clause.
pub fn reduce_3sat_to_sdm(formula: &CnfFormula) -> Result<(SdmInstance, GadgetMap), ReductionError> {
    let s = formula.clauses().len();
    if s == 0 {
        return Err(ReductionError::NoClauses);
    }
    let t = formula.num_vars();
    let map = GadgetMap::standard(t, s);
    let mut edges = Vec::new();
    for i in 1..=t {
        for j in 1..=map.cycle_len() {
            edges.push(map.cycle_edge(i, j, j + 1));
        }
    }
    for (k0, clause) in formula.clauses().iter().enumerate() {
        let k = k0 + 1;
        let (w, z) = map.clause_vertices(k);
        edges.push(Edge { x: w.index, y: z.index });
        for lit in clause {
            let j = if lit.positive { 4 * k - 3 } else { 4 * k - 1 };
            edges.push(map.literal_edge(k, lit.var, j));
        }
    }
    let n = 2 * s * t + s;
    let graph = BipartiteGraph::new(n, n, edges)?;
    let instance = SdmInstance::new(graph, map.s_set())?;
    Ok((instance, map))
}

/// The true and false S_i-pairs of `H_i`.
///
/// True: `M1 = {v1v2, v3v4, …}`, `M2 = {v_{4l-2} v_{4l-1}}`.
/// False: `M1 = {v2v3, v4v5, …, v_{4s} v1}`, `M2 = {v_{4l-2} v_{4l-3}}`.
pub fn true_false_pairs(map: &GadgetMap, i: usize) -> (SPair, SPair) {
    let half = 2 * map.num_clauses();
    let s = map.num_clauses();
    let true_m1: Matching = (1..=half).map(|m| map.cycle_edge(i, 2 * m - 1, 2 * m)).collect();
    let true_m2: Matching = (1..=s).map(|l| map.cycle_edge(i, 4 * l - 2, 4 * l - 1)).collect();
    let false_m1: Matching = (1..=half).map(|m| map.cycle_edge(i, 2 * m, 2 * m + 1)).collect();
    let false_m2: Matching = (1..=s).map(|l| map.cycle_edge(i, 4 * l - 2, 4 * l - 3)).collect();
    (SPair::new(true_m1, true_m2), SPair::new(false_m1, false_m2))
}

/// Reads the truth value of each variable off the pair induced on its cycle.
pub fn decode_spair_to_assignment(map: &GadgetMap, pair: &SPair) -> Result<Assignment, ReductionError> {
    let mut values = Vec::with_capacity(map.num_vars());
    for i in 1..=map.num_vars() {
        let xs: Vec<usize> = map.cycle_x(i).collect();
        let (t_pair, f_pair) = true_false_pairs(map, i);
        let s_i: Vec<usize> = t_pair.m2.iter().map(|e| e.x).collect();
        let m1 = pair.m1.filter_x(|x| xs.contains(&x));
        let m2 = pair.m2.filter_x(|x| s_i.contains(&x));
        if m1 == t_pair.m1 && m2 == t_pair.m2 {
            values.push(true);
        } else if m1 == f_pair.m1 && m2 == f_pair.m2 {
            values.push(false);
        } else {
            return Err(ReductionError::NeitherPair { var: i });
        }
    }
    Ok(Assignment::new(values))
}

/// Builds the S-pair for a satisfying assignment. Each clause is witnessed
/// by its lowest-index variable whose literal is true.
pub fn encode_assignment_to_spair(
    formula: &CnfFormula,
    map: &GadgetMap,
    assignment: &Assignment,
) -> Result<SPair, ReductionError> {
    if assignment.num_vars() != formula.num_vars() {
        return Err(ReductionError::AssignmentLength { expected: formula.num_vars(), got: assignment.num_vars() });
    }
    let mut pair = SPair::default();
    for i in 1..=formula.num_vars() {
        let (t, f) = true_false_pairs(map, i);
        let chosen = if assignment.value(i) { t } else { f };
        pair.m1 = pair.m1.union(&chosen.m1);
        pair.m2 = pair.m2.union(&chosen.m2);
    }
    for (k0, clause) in formula.clauses().iter().enumerate() {
        let k = k0 + 1;
        let witness = clause
            .iter()
            .filter(|l| l.is_satisfied_by(assignment))
            .min_by_key(|l| l.var)
            .ok_or(ReductionError::UnsatisfiedClause { clause: k })?;
        let (w, z) = map.clause_vertices(k);
        pair.m1.insert(Edge { x: w.index, y: z.index });
        let j = if witness.positive { 4 * k - 3 } else { 4 * k - 1 };
        pair.m2.insert(map.literal_edge(k, witness.var, j));
    }
    Ok(pair)
}

/// Sidecar text: `p map <t> <s>`, then `m variable <i> cycle <v_{i,1}>` and
/// `m clause <k> w <id> z <id>` lines, ids written as `x<n>` / `y<n>` (1-based).
pub fn write_mapping(map: &GadgetMap) -> String {
    let mut out = format!("p map {} {}\n", map.t, map.s);
    for i in 1..=map.t {
        let _ = writeln!(out, "m variable {i} cycle {}", map.cycle_vertex(i, 1));
    }
    for k in 1..=map.s {
        let (w, z) = map.clause_vertices(k);
        let _ = writeln!(out, "m clause {k} w {w} z {z}");
    }
    out
}

fn parse_vertex(tok: &str, line: usize) -> Result<VertexId, ReductionError> {
    let err = || ReductionError::Mapping { line, msg: format!("bad vertex id `{tok}`") };
    let (side, rest) = match tok.split_at_checked(1) {
        Some(("x", r)) => (Side::X, r),
        Some(("y", r)) => (Side::Y, r),
        _ => return Err(err()),
    };
    let n: usize = rest.parse().map_err(|_| err())?;
    if n == 0 {
        return Err(err());
    }
    Ok(VertexId { side, index: n - 1 })
}

/// Parses a sidecar written by [`write_mapping`]. Every variable and clause
/// must appear exactly once; ids must not overlap.
pub fn parse_mapping(text: &str) -> Result<GadgetMap, ReductionError> {
    let mut dims: Option<(usize, usize)> = None;
    let mut cycle: Vec<Option<usize>> = Vec::new();
    let mut clause: Vec<Option<(usize, usize)>> = Vec::new();
    let bad = |line: usize, msg: &str| ReductionError::Mapping { line, msg: msg.to_string() };

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["p", "map", t, s] => {
                if dims.is_some() {
                    return Err(bad(ln, "duplicate header"));
                }
                let t: usize = t.parse().map_err(|_| bad(ln, "bad variable count"))?;
                let s: usize = s.parse().map_err(|_| bad(ln, "bad clause count"))?;
                dims = Some((t, s));
                cycle = vec![None; t];
                clause = vec![None; s];
            }
            ["m", "variable", i, "cycle", v] => {
                dims.ok_or_else(|| bad(ln, "entry before header"))?;
                let i: usize = i.parse().map_err(|_| bad(ln, "bad variable index"))?;
                let v = parse_vertex(v, ln)?;
                if v.side != Side::Y {
                    return Err(bad(ln, "v_{i,1} must be a y vertex"));
                }
                let slot = i
                    .checked_sub(1)
                    .and_then(|i| cycle.get_mut(i))
                    .ok_or_else(|| bad(ln, "variable index out of range"))?;
                if slot.replace(v.index).is_some() {
                    return Err(bad(ln, "variable listed twice"));
                }
            }
            ["m", "clause", k, "w", w, "z", z] => {
                dims.ok_or_else(|| bad(ln, "entry before header"))?;
                let k: usize = k.parse().map_err(|_| bad(ln, "bad clause index"))?;
                let (w, z) = (parse_vertex(w, ln)?, parse_vertex(z, ln)?);
                if w.side != Side::X || z.side != Side::Y {
                    return Err(bad(ln, "w must be an x vertex and z a y vertex"));
                }
                let slot = k
                    .checked_sub(1)
                    .and_then(|k| clause.get_mut(k))
                    .ok_or_else(|| bad(ln, "clause index out of range"))?;
                if slot.replace((w.index, z.index)).is_some() {
                    return Err(bad(ln, "clause listed twice"));
                }
            }
            _ => return Err(bad(ln, &format!("unrecognised line `{line}`"))),
        }
    }
    let (t, s) = dims.ok_or_else(|| bad(0, "missing `p map` header"))?;
    let cycle_base = cycle
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| bad(0, &format!("variable {} missing", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let (clause_w, clause_z): (Vec<usize>, Vec<usize>) = clause
        .into_iter()
        .enumerate()
        .map(|(k, c)| c.ok_or_else(|| bad(0, &format!("clause {} missing", k + 1))))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .unzip();

    let map = GadgetMap { s, t, cycle_base, clause_w, clause_z };
    let (nx, ny) = map.extent();
    let mut used_x = vec![false; nx];
    let mut used_y = vec![false; ny];
    let mut claim = |v: VertexId| {
        let slot = match v.side {
            Side::X => &mut used_x[v.index],
            Side::Y => &mut used_y[v.index],
        };
        !std::mem::replace(slot, true)
    };
    for i in 1..=t {
        for j in 1..=map.cycle_len() {
            if !claim(map.cycle_vertex(i, j)) {
                return Err(bad(0, &format!("vertex {} is used twice", map.cycle_vertex(i, j))));
            }
        }
    }
    for k in 1..=s {
        let (w, z) = map.clause_vertices(k);
        if !claim(w) || !claim(z) {
            return Err(bad(0, &format!("clause {k} reuses a vertex")));
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::verify_spair;
    use crate::reductions::cnf::Literal;

    fn formula(t: usize, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::new(t, clauses.iter().map(|c| c.iter().map(|&l| Literal::from_dimacs(l)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn single_clause_sizes() {
        let f = formula(3, &[&[1, -2, 3]]);
        let (inst, map) = reduce_3sat_to_sdm(&f).unwrap();
        let g = inst.graph();
        assert_eq!(g.nx() + g.ny(), 14);
        assert_eq!(g.nx(), 7);
        assert_eq!(inst.s_set().len(), 4);
        let w = map.clause_vertices(1).0.index;
        let lits: Vec<usize> = g.neighbors_x(w).to_vec();
        let z = map.clause_vertices(1).1.index;
        let mut expected =
            vec![map.cycle_vertex(1, 1).index, map.cycle_vertex(2, 3).index, map.cycle_vertex(3, 1).index, z];
        expected.sort_unstable();
        assert_eq!(lits, expected);
    }

    #[test]
    fn contradiction_gadget() {
        let f = formula(1, &[&[1], &[-1]]);
        let (inst, map) = reduce_3sat_to_sdm(&f).unwrap();
        let g = inst.graph();
        assert_eq!(g.nx(), 6);
        assert_eq!(g.num_edges(), 8 + 2 + 2);
        let (w1, _) = map.clause_vertices(1);
        let (w2, _) = map.clause_vertices(2);
        assert!(g.has_edge(Edge { x: w1.index, y: map.cycle_vertex(1, 1).index }));
        assert!(g.has_edge(Edge { x: w2.index, y: map.cycle_vertex(1, 7).index }));
    }

    #[test]
    fn no_clauses_rejected() {
        let f = CnfFormula::new(2, vec![]).unwrap();
        assert_eq!(reduce_3sat_to_sdm(&f).unwrap_err(), ReductionError::NoClauses);
    }

    #[test]
    fn true_pair_for_s2() {
        let map = GadgetMap::standard(1, 2);
        let (t, f) = true_false_pairs(&map, 1);
        let e = |a, b| map.cycle_edge(1, a, b);
        let want = |pairs: &[(usize, usize)]| -> Matching { pairs.iter().map(|&(a, b)| e(a, b)).collect() };
        assert_eq!(t.m1, want(&[(1, 2), (3, 4), (5, 6), (7, 8)]));
        assert_eq!(t.m2, want(&[(2, 3), (6, 7)]));
        assert_eq!(f.m1, want(&[(2, 3), (4, 5), (6, 7), (8, 1)]));
        assert_eq!(f.m2, want(&[(1, 2), (5, 6)]));
    }

    #[test]
    fn encode_decode_round_trip() {
        let f = formula(3, &[&[1, -2, 3]]);
        let (inst, map) = reduce_3sat_to_sdm(&f).unwrap();
        let a = Assignment::new(vec![true, true, false]);
        let p = encode_assignment_to_spair(&f, &map, &a).unwrap();
        assert_eq!(verify_spair(&inst, &p), Ok(()));
        let (w, z) = map.clause_vertices(1);
        assert!(p.m1.contains(Edge { x: w.index, y: z.index }));
        assert!(p.m2.contains(Edge { x: w.index, y: map.cycle_vertex(1, 1).index }));
        assert_eq!(decode_spair_to_assignment(&map, &p).unwrap(), a);
    }

    #[test]
    fn encode_rejects_unsatisfying() {
        let f = formula(2, &[&[1], &[2]]);
        let (_, map) = reduce_3sat_to_sdm(&f).unwrap();
        let err = encode_assignment_to_spair(&f, &map, &Assignment::new(vec![true, false])).unwrap_err();
        assert_eq!(err, ReductionError::UnsatisfiedClause { clause: 2 });
    }

    #[test]
    fn decode_reads_pairs() {
        let map = GadgetMap::standard(2, 1);
        let (t1, _) = true_false_pairs(&map, 1);
        let (_, f2) = true_false_pairs(&map, 2);
        let p = SPair::new(t1.m1.union(&f2.m1), t1.m2.union(&f2.m2));
        assert_eq!(decode_spair_to_assignment(&map, &p).unwrap(), Assignment::new(vec![true, false]));
        let broken = SPair::new(t1.m1.clone(), f2.m2.clone());
        assert_eq!(decode_spair_to_assignment(&map, &broken).unwrap_err(), ReductionError::NeitherPair { var: 1 });
    }

    #[test]
    fn mapping_round_trip() {
        let map = GadgetMap::standard(3, 2);
        let text = write_mapping(&map);
        assert!(text.contains("m variable 2 cycle y5\n"));
        assert!(text.contains("m clause 1 w x13 z y13\n"));
        assert_eq!(parse_mapping(&text).unwrap(), map);
    }

    #[test]
    fn mapping_errors() {
        assert!(parse_mapping("m variable 1 cycle y1\n").is_err());
        assert!(parse_mapping("p map 1 1\nm variable 1 cycle x1\nm clause 1 w x3 z y3\n").is_err());
        assert!(parse_mapping("p map 1 1\nm clause 1 w x3 z y3\n").is_err());
        assert!(parse_mapping("p map 1 1\nm variable 1 cycle y1\nm clause 1 w x1 z y5\n").is_err());
        assert!(parse_mapping("p map 1 1\nm variable 1 cycle y1\nm clause 1 w x3 z y3\nq\n").is_err());
    }
}
