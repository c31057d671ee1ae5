//! Flow network construction: sparse grid networks and the bipartite baseline.
//!
//! A [`FlowNetwork`] is a directed graph with non-negative real arc costs,
//! stored as flat arrays grouped by tail node so that arc order is
//! deterministic (tail-major, then direction angle order) and solver runs
//! are reproducible.
//!
//! Grid networks connect every bin to its in-grid translates by the step
//! set of the chosen metric: the four axis steps for `l1`, the eight unit
//! steps for `linf`, and the coprime steps bounded by `L` for `l2`. Unit
//! steps cost exactly 1; an `l2` step costs its Euclidean length, computed
//! once per direction and shared by all arcs with that step.

use crate::directions::{direction_set, Direction};
use crate::error::{Error, Result};
use crate::histogram::BalancedPair;
use crate::metric::{GroundMetric, MetricKind};

/// Default ceiling on the number of arcs a single network may hold.
pub const DEFAULT_ARC_CAP: u64 = 200_000_000;

/// Arc cap, overridable through the `WASS1_ARC_CAP` environment variable.
pub fn arc_cap() -> u64 {
    std::env::var("WASS1_ARC_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ARC_CAP)
}

/// Directed network with non-negative arc costs and no self-loops.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    node_count: usize,
    tails: Vec<u32>,
    heads: Vec<u32>,
    costs: Vec<f64>,
    /// CSR offsets: arcs of node `u` are `first_out[u]..first_out[u + 1]`.
    first_out: Vec<u32>,
    max_cost: f64,
    integral_costs: bool,
}

impl FlowNetwork {
    /// Builds a network from an arbitrary arc list, sorting it tail-major
    /// (stable, so relative arc order per tail is preserved).
    pub fn new(node_count: usize, arcs: Vec<(u32, u32, f64)>) -> Result<Self> {
        let mut order: Vec<u32> = (0..arcs.len() as u32).collect();
        order.sort_by_key(|&i| arcs[i as usize].0);
        let tails = order.iter().map(|&i| arcs[i as usize].0).collect();
        let heads = order.iter().map(|&i| arcs[i as usize].1).collect();
        let costs = order.iter().map(|&i| arcs[i as usize].2).collect();
        Self::from_tail_sorted(node_count, tails, heads, costs)
    }

    /// Fast path for builders that emit arcs already grouped by tail.
    fn from_tail_sorted(
        node_count: usize,
        tails: Vec<u32>,
        heads: Vec<u32>,
        costs: Vec<f64>,
    ) -> Result<Self> {
        let m = tails.len();
        debug_assert!(tails.windows(2).all(|w| w[0] <= w[1]));
        let mut max_cost = 0.0f64;
        let mut integral = true;
        for i in 0..m {
            let (t, h, c) = (tails[i], heads[i], costs[i]);
            if t as usize >= node_count || h as usize >= node_count {
                return Err(Error::InvalidNetwork(format!(
                    "arc ({t}, {h}) endpoint outside 0..{node_count}"
                )));
            }
            if t == h {
                return Err(Error::InvalidNetwork(format!("self-loop at node {t}")));
            }
            if !c.is_finite() || c < 0.0 {
                return Err(Error::InvalidNetwork(format!(
                    "arc ({t}, {h}) has invalid cost {c}"
                )));
            }
            max_cost = max_cost.max(c);
            integral = integral && c.fract() == 0.0 && c <= 2f64.powi(53);
        }
        let mut first_out = vec![0u32; node_count + 1];
        for &t in &tails {
            first_out[t as usize + 1] += 1;
        }
        for u in 0..node_count {
            first_out[u + 1] += first_out[u];
        }
        Ok(Self {
            node_count,
            tails,
            heads,
            costs,
            first_out,
            max_cost,
            integral_costs: integral,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.tails.len()
    }

    pub fn tail(&self, arc: usize) -> u32 {
        self.tails[arc]
    }

    pub fn head(&self, arc: usize) -> u32 {
        self.heads[arc]
    }

    pub fn cost(&self, arc: usize) -> f64 {
        self.costs[arc]
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    /// Arc ids leaving node `u`.
    pub fn out_arcs(&self, u: u32) -> std::ops::Range<usize> {
        self.first_out[u as usize] as usize..self.first_out[u as usize + 1] as usize
    }

    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        (0..self.arc_count()).map(|i| (self.tails[i], self.heads[i], self.costs[i]))
    }

    pub fn max_arc_cost(&self) -> f64 {
        self.max_cost
    }

    /// True when every cost is an integer representable exactly in `f64`;
    /// objectives are then accumulated in exact integer arithmetic.
    pub fn has_integral_costs(&self) -> bool {
        self.integral_costs
    }

    /// In-arc ids grouped by head: `(first_in, in_arcs)` with the in-arcs of
    /// node `v` at `in_arcs[first_in[v]..first_in[v + 1]]`.
    pub fn reverse_adjacency(&self) -> (Vec<u32>, Vec<u32>) {
        let n = self.node_count;
        let m = self.arc_count();
        let mut first_in = vec![0u32; n + 1];
        for &h in &self.heads {
            first_in[h as usize + 1] += 1;
        }
        for v in 0..n {
            first_in[v + 1] += first_in[v];
        }
        let mut cursor = first_in.clone();
        let mut in_arcs = vec![0u32; m];
        for a in 0..m {
            let h = self.heads[a] as usize;
            in_arcs[cursor[h] as usize] = a as u32;
            cursor[h] += 1;
        }
        (first_in, in_arcs)
    }

    /// Single-source shortest path costs over arc costs (Dijkstra).
    /// Unreachable nodes get `f64::INFINITY`.
    pub fn shortest_path_costs(&self, source: u32) -> Vec<f64> {
        #[derive(PartialEq)]
        struct Entry {
            dist: f64,
            node: u32,
        }
        impl Eq for Entry {}
        impl Ord for Entry {
            fn cmp(&self, other: &Self) -> std::cmp::Ordering {
                // Reversed: BinaryHeap is a max-heap, we need the min first.
                other
                    .dist
                    .total_cmp(&self.dist)
                    .then_with(|| other.node.cmp(&self.node))
            }
        }
        impl PartialOrd for Entry {
            fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }

        let mut dist = vec![f64::INFINITY; self.node_count];
        let mut done = vec![false; self.node_count];
        let mut heap = std::collections::BinaryHeap::new();
        dist[source as usize] = 0.0;
        heap.push(Entry {
            dist: 0.0,
            node: source,
        });
        while let Some(Entry { dist: d, node: u }) = heap.pop() {
            if done[u as usize] {
                continue;
            }
            done[u as usize] = true;
            for a in self.out_arcs(u) {
                let v = self.heads[a] as usize;
                let nd = d + self.costs[a];
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Entry {
                        dist: nd,
                        node: v as u32,
                    });
                }
            }
        }
        dist
    }
}

fn node_id(i1: u32, i2: u32, side: u32) -> u32 {
    i1 * side + i2
}

fn metric_directions(metric: GroundMetric) -> Vec<Direction> {
    match metric {
        GroundMetric::L1 => direction_set(0),
        GroundMetric::Linf => direction_set(1),
        GroundMetric::L2 { l } => direction_set(l),
    }
}

/// Number of arcs of the grid network, without materializing it.
pub fn edge_count(side: u32, metric: GroundMetric) -> Result<u64> {
    metric.validate(side)?;
    let n = side as u64;
    Ok(match metric {
        GroundMetric::L1 => 4 * n * (n - 1),
        GroundMetric::Linf => 4 * n * (n - 1) + 4 * (n - 1) * (n - 1),
        GroundMetric::L2 { l } => direction_set(l)
            .iter()
            .map(|d| {
                let a = n - d.d1.unsigned_abs() as u64;
                let b = n - d.d2.unsigned_abs() as u64;
                a * b
            })
            .sum(),
    })
}

/// Builds the sparse grid network for `metric` on a `side x side` grid.
///
/// Nodes are grid bins in row-major order; every bin appears even with zero
/// mass, because reduced-network paths route through it. Arc cost is the
/// ground distance of the step: 1 for `l1`/`linf` unit steps, the Euclidean
/// step length for `l2`.
pub fn build_grid_network(side: u32, metric: GroundMetric) -> Result<FlowNetwork> {
    build_grid_network_capped(side, metric, arc_cap())
}

/// As [`build_grid_network`] but with an explicit arc ceiling.
pub fn build_grid_network_capped(side: u32, metric: GroundMetric, cap: u64) -> Result<FlowNetwork> {
    metric.validate(side)?;
    let expected = edge_count(side, metric)?;
    if expected > cap {
        return Err(Error::ArcCapExceeded {
            arcs: expected,
            cap,
        });
    }
    let dirs = metric_directions(metric);
    let step_costs: Vec<f64> = match metric.kind() {
        MetricKind::L1 | MetricKind::Linf => vec![1.0; dirs.len()],
        MetricKind::L2 => dirs.iter().map(Direction::euclidean_len).collect(),
    };
    let n = side as i64;
    let node_count = (side as usize) * (side as usize);
    let mut tails = Vec::with_capacity(expected as usize);
    let mut heads = Vec::with_capacity(expected as usize);
    let mut costs = Vec::with_capacity(expected as usize);
    for i1 in 0..side {
        for i2 in 0..side {
            let u = node_id(i1, i2, side);
            for (d, cost) in dirs.iter().zip(&step_costs) {
                let j1 = i1 as i64 + d.d1 as i64;
                let j2 = i2 as i64 + d.d2 as i64;
                if j1 >= 0 && j1 < n && j2 >= 0 && j2 < n {
                    tails.push(u);
                    heads.push(node_id(j1 as u32, j2 as u32, side));
                    costs.push(*cost);
                }
            }
        }
    }
    debug_assert_eq!(tails.len() as u64, expected);
    FlowNetwork::from_tail_sorted(node_count, tails, heads, costs)
}

/// Support-restricted bipartite baseline: one arc from every positive-supply
/// bin to every positive-demand bin, at the exact ground distance. Returns
/// the network (sources first, then sinks, in grid order) and its supplies.
pub fn build_bipartite_network(
    pair: &BalancedPair,
    kind: MetricKind,
) -> Result<(FlowNetwork, Vec<i64>)> {
    let side = pair.side();
    let b = pair.supplies();
    let mut sources: Vec<u32> = Vec::new();
    let mut sinks: Vec<u32> = Vec::new();
    for (u, &s) in b.iter().enumerate() {
        if s > 0 {
            sources.push(u as u32);
        } else if s < 0 {
            sinks.push(u as u32);
        }
    }
    let arcs = sources.len() as u64 * sinks.len() as u64;
    let cap = arc_cap();
    if arcs > cap {
        return Err(Error::ArcCapExceeded { arcs, cap });
    }
    let coord = |u: u32| (u / side, u % side);
    let node_count = sources.len() + sinks.len();
    let mut tails = Vec::with_capacity(arcs as usize);
    let mut heads = Vec::with_capacity(arcs as usize);
    let mut costs = Vec::with_capacity(arcs as usize);
    for (si, &s) in sources.iter().enumerate() {
        for (ti, &t) in sinks.iter().enumerate() {
            tails.push(si as u32);
            heads.push((sources.len() + ti) as u32);
            costs.push(kind.distance(coord(s), coord(t)));
        }
    }
    let supplies: Vec<i64> = sources
        .iter()
        .map(|&u| b[u as usize])
        .chain(sinks.iter().map(|&u| b[u as usize]))
        .collect();
    let net = FlowNetwork::from_tail_sorted(node_count, tails, heads, costs)?;
    Ok((net, supplies))
}
