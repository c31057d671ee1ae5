//! Successive shortest paths with Dijkstra over reduced costs.
//!
//! Slower than the simplex on large instances but structurally independent
//! of it, which is what makes it useful as a cross-validation oracle. Node
//! potentials keep every residual reduced cost non-negative, so each
//! augmentation is a plain Dijkstra run; augmenting the maximum amount along
//! the path bounds the number of iterations by the total excess.

use super::{objective_of, validate_supplies, FlowSolution, SolveStatus};
use crate::error::Result;
use crate::network::FlowNetwork;

const NONE: u32 = u32::MAX;

#[derive(PartialEq)]
struct Entry {
    dist: f64,
    node: u32,
}
impl Eq for Entry {}
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
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

pub fn solve_ssp(net: &FlowNetwork, b: &[i64]) -> Result<FlowSolution> {
    validate_supplies(net, b)?;
    let n = net.node_count();
    let m = net.arc_count();
    if n == 0 {
        return Ok(FlowSolution::empty());
    }

    let (first_in, in_arcs) = net.reverse_adjacency();
    let mut flow = vec![0i64; m];
    let mut pi = vec![0.0f64; n];
    let mut excess: Vec<i64> = b.to_vec();
    let mut iterations = 0u64;

    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    let mut parent_arc = vec![NONE; n];
    let mut parent_forward = vec![false; n];
    let mut heap = std::collections::BinaryHeap::new();

    let mut next_source = 0usize;
    let mut infeasible = false;
    'outer: loop {
        // Sources only ever drain, so this cursor moves forward only.
        while next_source < n && excess[next_source] <= 0 {
            next_source += 1;
        }
        if next_source == n {
            break;
        }
        let s = next_source as u32;

        dist.fill(f64::INFINITY);
        done.fill(false);
        parent_arc.fill(NONE);
        heap.clear();
        dist[s as usize] = 0.0;
        heap.push(Entry { dist: 0.0, node: s });
        let mut target = NONE;
        while let Some(Entry { dist: d, node: u }) = heap.pop() {
            if done[u as usize] {
                continue;
            }
            done[u as usize] = true;
            if excess[u as usize] < 0 {
                target = u;
                break;
            }
            // Forward residuals: uncapacitated arcs are always available.
            for a in net.out_arcs(u) {
                let v = net.head(a) as usize;
                if done[v] {
                    continue;
                }
                let w = (net.cost(a) + pi[u as usize] - pi[v]).max(0.0);
                let nd = d + w;
                if nd < dist[v] {
                    dist[v] = nd;
                    parent_arc[v] = a as u32;
                    parent_forward[v] = true;
                    heap.push(Entry {
                        dist: nd,
                        node: v as u32,
                    });
                }
            }
            // Backward residuals of arcs currently carrying flow.
            for idx in first_in[u as usize]..first_in[u as usize + 1] {
                let a = in_arcs[idx as usize] as usize;
                if flow[a] == 0 {
                    continue;
                }
                let v = net.tail(a) as usize;
                if done[v] {
                    continue;
                }
                let w = (-net.cost(a) + pi[u as usize] - pi[v]).max(0.0);
                let nd = d + w;
                if nd < dist[v] {
                    dist[v] = nd;
                    parent_arc[v] = a as u32;
                    parent_forward[v] = false;
                    heap.push(Entry {
                        dist: nd,
                        node: v as u32,
                    });
                }
            }
        }
        if target == NONE {
            infeasible = true;
            break 'outer;
        }
        let t = target;
        let dt = dist[t as usize];
        for v in 0..n {
            pi[v] += dist[v].min(dt);
        }
        // Maximum augmentation: bounded by the end excesses and by the flow
        // on backward arcs along the path.
        let mut delta = excess[s as usize].min(-excess[t as usize]);
        let mut v = t;
        while v != s {
            let a = parent_arc[v as usize] as usize;
            if parent_forward[v as usize] {
                v = net.tail(a);
            } else {
                delta = delta.min(flow[a]);
                v = net.head(a);
            }
        }
        debug_assert!(delta > 0);
        let mut v = t;
        while v != s {
            let a = parent_arc[v as usize] as usize;
            if parent_forward[v as usize] {
                flow[a] += delta;
                v = net.tail(a);
            } else {
                flow[a] -= delta;
                v = net.head(a);
            }
        }
        excess[s as usize] -= delta;
        excess[t as usize] += delta;
        iterations += 1;
    }

    let potentials: Vec<f64> = pi.iter().map(|p| -p).collect();
    let (objective, objective_exact, lossy) = objective_of(net, &flow);
    let status = if infeasible {
        SolveStatus::Infeasible
    } else if lossy {
        SolveStatus::NumericLimit
    } else {
        SolveStatus::Optimal
    };
    Ok(FlowSolution {
        status,
        objective,
        objective_exact,
        flows: flow,
        potentials,
        iterations,
    })
}
