//! Feasible integral flow in a network with lower and upper arc bounds.
//!
//! Lower bounds are removed the usual way: each arc keeps `upper - lower` of
//! capacity, the forced `lower` units become node excesses and deficits fed
//! from a super-source and drained to a super-sink, and a `sink -> source`
//! return arc of unbounded capacity turns the s-t flow into a circulation.
//! The instance is feasible iff a max flow saturates every super-source arc.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub tail: usize,
    pub head: usize,
    pub lower: u64,
    pub upper: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("arc {arc} ({tail} -> {head}) references a node outside 0..{nodes}")]
    DanglingArc { arc: usize, tail: usize, head: usize, nodes: usize },
    #[error("arc {arc} has lower bound {lower} above its upper bound {upper}")]
    InvertedBounds { arc: usize, lower: u64, upper: u64 },
    #[error("terminal node {0} is outside the network")]
    TerminalOutOfRange(usize),
    #[error("arc {0} has a capacity too large to represent")]
    CapacityTooLarge(usize),
}

/// A directed network. Arcs are validated when a flow is requested, not on
/// insertion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowNetwork {
    nodes: usize,
    arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { nodes, arcs: Vec::new() }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    /// Appends an arc and returns its index.
    pub fn add_arc(&mut self, tail: usize, head: usize, lower: u64, upper: u64) -> usize {
        self.arcs.push(FlowArc { tail, head, lower, upper });
        self.arcs.len() - 1
    }
}

const CAP_LIMIT: u64 = 1 << 48;

struct Residual {
    head: Vec<usize>,
    cap: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn new(n: usize) -> Self {
        Residual { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); n] }
    }

    /// Adds `u -> v` with capacity `c` and its reverse; returns the forward id.
    /// The reverse of edge `e` is always `e ^ 1`.
    fn add(&mut self, u: usize, v: usize, c: i64) -> usize {
        let id = self.head.len();
        self.head.push(v);
        self.cap.push(c);
        self.adj[u].push(id);
        self.head.push(u);
        self.cap.push(0);
        self.adj[v].push(id + 1);
        id
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut level = vec![usize::MAX; self.adj.len()];
        level[s] = 0;
        let mut queue = vec![s];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push(v);
                }
            }
        }
        (level[t] != usize::MAX).then_some(level)
    }

    /// One augmenting path in the level graph, found without recursion.
    fn push_path(&mut self, s: usize, t: usize, level: &mut [usize], cursor: &mut [usize]) -> i64 {
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let delta = path.iter().map(|&e| self.cap[e]).min().unwrap_or(0);
                for &e in &path {
                    self.cap[e] -= delta;
                    self.cap[e ^ 1] += delta;
                }
                return delta;
            }
            let mut advanced = false;
            while cursor[u] < self.adj[u].len() {
                let e = self.adj[u][cursor[u]];
                let v = self.head[e];
                if self.cap[e] > 0 && level[v] == level[u].wrapping_add(1) {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                cursor[u] += 1;
            }
            if !advanced {
                if u == s {
                    return 0;
                }
                level[u] = usize::MAX;
                let e = path.pop().expect("non-source node has an entry arc");
                u = self.head[e ^ 1];
                cursor[u] += 1;
            }
        }
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while let Some(mut level) = self.levels(s, t) {
            let mut cursor = vec![0; self.adj.len()];
            loop {
                let f = self.push_path(s, t, &mut level, &mut cursor);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

/// Finds an integral flow from `source` to `sink` meeting every arc's bounds
/// with conservation at all other nodes, or `None` if none exists. Returns
/// the flow on each arc, indexed like `network.arcs()`.
///
/// Residual arcs are laid out in (tail, head) order, which fixes the result.
pub fn feasible_flow(network: &FlowNetwork, source: usize, sink: usize) -> Result<Option<Vec<u64>>, FlowError> {
    let n = network.nodes;
    for t in [source, sink] {
        if t >= n {
            return Err(FlowError::TerminalOutOfRange(t));
        }
    }
    for (i, a) in network.arcs.iter().enumerate() {
        if a.tail >= n || a.head >= n {
            return Err(FlowError::DanglingArc { arc: i, tail: a.tail, head: a.head, nodes: n });
        }
        if a.lower > a.upper {
            return Err(FlowError::InvertedBounds { arc: i, lower: a.lower, upper: a.upper });
        }
        if a.upper > CAP_LIMIT {
            return Err(FlowError::CapacityTooLarge(i));
        }
    }

    let super_source = n;
    let super_sink = n + 1;
    let mut res = Residual::new(n + 2);
    let mut balance = vec![0i64; n];
    let mut order: Vec<usize> = (0..network.arcs.len()).collect();
    order.sort_by_key(|&i| (network.arcs[i].tail, network.arcs[i].head, i));

    let mut forward = vec![0; network.arcs.len()];
    for &i in &order {
        let a = network.arcs[i];
        forward[i] = res.add(a.tail, a.head, (a.upper - a.lower) as i64);
        balance[a.head] += a.lower as i64;
        balance[a.tail] -= a.lower as i64;
    }
    if source != sink {
        let unbounded: i64 = network.arcs.iter().map(|a| a.upper as i64).sum::<i64>() + 1;
        res.add(sink, source, unbounded);
    }
    let mut required = 0;
    for (v, &b) in balance.iter().enumerate() {
        if b > 0 {
            res.add(super_source, v, b);
            required += b;
        } else if b < 0 {
            res.add(v, super_sink, -b);
        }
    }

    if res.max_flow(super_source, super_sink) != required {
        return Ok(None);
    }
    let flows =
        network.arcs.iter().zip(&forward).map(|(a, &e)| a.lower + (a.upper - a.lower) - res.cap[e] as u64).collect();
    Ok(Some(flows))
}
