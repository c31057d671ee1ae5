//! Network simplex for uncapacitated min-cost flow.
//!
//! Big-M start: an artificial root is connected to every node by a
//! high-cost artificial arc, giving an initial strongly feasible spanning
//! tree. Pricing is a block search over the real arc list (block size
//! ceil(sqrt(m)), deterministic starting offset 0). The spanning tree is
//! kept as parent / first-child / sibling links; the leaving arc is the
//! last blocking arc in cycle orientation starting at the apex, which
//! preserves strong feasibility and rules out cycling on degenerate pivots.

use super::{objective_of, validate_supplies, FlowSolution, SolveStatus};
use crate::error::{Error, Result};
use crate::network::FlowNetwork;

const NONE: u32 = u32::MAX;

struct Simplex<'a> {
    net: &'a FlowNetwork,
    m: usize,
    root: u32,
    art_cost: f64,
    eps: f64,
    // Per node; `n + 1` entries, the root last.
    parent: Vec<u32>,
    pred_arc: Vec<u32>,
    /// True when the tree arc is oriented node -> parent.
    pred_up: Vec<bool>,
    depth: Vec<u32>,
    first_child: Vec<u32>,
    next_sib: Vec<u32>,
    prev_sib: Vec<u32>,
    potential: Vec<f64>,
    /// Per arc; real arcs first, artificial arc of node `u` at `m + u`.
    flow: Vec<i64>,
    /// Scratch for subtree re-rooting.
    path: Vec<u32>,
    stack: Vec<u32>,
}

pub fn solve_network_simplex(net: &FlowNetwork, b: &[i64]) -> Result<FlowSolution> {
    validate_supplies(net, b)?;
    let n = net.node_count();
    if n == 0 {
        return Ok(FlowSolution::empty());
    }
    let m = net.arc_count();
    let max_cost = net.max_arc_cost();
    let mut sx = Simplex {
        net,
        m,
        root: n as u32,
        // Larger than any simple path cost, so artificial arcs price out.
        art_cost: 1.0 + max_cost * n as f64,
        eps: 1e-12 * (1.0 + max_cost),
        parent: vec![NONE; n + 1],
        pred_arc: vec![NONE; n + 1],
        pred_up: vec![false; n + 1],
        depth: vec![0; n + 1],
        first_child: vec![NONE; n + 1],
        next_sib: vec![NONE; n + 1],
        prev_sib: vec![NONE; n + 1],
        potential: vec![0.0; n + 1],
        flow: vec![0; m + n],
        path: Vec::new(),
        stack: Vec::new(),
    };
    sx.init(b);

    let block = (m as f64).sqrt().ceil().max(1.0) as usize;
    let mut start = 0usize;
    let mut iterations = 0u64;
    while let Some((arc, rc)) = sx.find_entering(&mut start, block) {
        sx.pivot(arc, rc)?;
        iterations += 1;
    }
    sx.recompute_potentials();

    let infeasible = (0..n).any(|u| sx.flow[m + u] > 0);
    let flows: Vec<i64> = sx.flow[..m].to_vec();
    let potentials: Vec<f64> = sx.potential[..n].to_vec();
    let (objective, objective_exact, lossy) = objective_of(net, &flows);
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
        flows,
        potentials,
        iterations,
    })
}

impl<'a> Simplex<'a> {
    /// Star tree around the root. A node with `b >= 0` sends its supply up
    /// the artificial arc (node -> root); a demand node receives along
    /// (root -> node). Zero-flow artificials point upward, so the initial
    /// basis is strongly feasible.
    fn init(&mut self, b: &[i64]) {
        let root = self.root as usize;
        self.parent[root] = NONE;
        self.depth[root] = 0;
        self.potential[root] = 0.0;
        for (u, &supply) in b.iter().enumerate() {
            self.parent[u] = self.root;
            self.pred_arc[u] = (self.m + u) as u32;
            self.pred_up[u] = supply >= 0;
            self.depth[u] = 1;
            self.potential[u] = if supply >= 0 {
                self.art_cost
            } else {
                -self.art_cost
            };
            self.flow[self.m + u] = supply.abs();
            self.link_child(self.root, u as u32);
        }
    }

    fn reduced_cost(&self, arc: usize) -> f64 {
        self.net.cost(arc) - self.potential[self.net.tail(arc) as usize]
            + self.potential[self.net.head(arc) as usize]
    }

    /// Block search over the real arcs: returns the most negative reduced
    /// cost in the first block (from the rotating start) that has one.
    fn find_entering(&self, start: &mut usize, block: usize) -> Option<(usize, f64)> {
        let m = self.m;
        let mut best = NONE as usize;
        let mut best_rc = -self.eps;
        let mut pos = *start;
        let mut scanned = 0usize;
        while scanned < m {
            let chunk = block.min(m - scanned);
            for _ in 0..chunk {
                let rc = self.reduced_cost(pos);
                if rc < best_rc {
                    best_rc = rc;
                    best = pos;
                }
                pos += 1;
                if pos == m {
                    pos = 0;
                }
            }
            scanned += chunk;
            if best != NONE as usize {
                *start = pos;
                return Some((best, best_rc));
            }
        }
        None
    }

    fn link_child(&mut self, parent: u32, child: u32) {
        let fc = self.first_child[parent as usize];
        self.next_sib[child as usize] = fc;
        self.prev_sib[child as usize] = NONE;
        if fc != NONE {
            self.prev_sib[fc as usize] = child;
        }
        self.first_child[parent as usize] = child;
    }

    fn unlink_child(&mut self, child: u32) {
        let p = self.parent[child as usize] as usize;
        let nx = self.next_sib[child as usize];
        let pv = self.prev_sib[child as usize];
        if pv != NONE {
            self.next_sib[pv as usize] = nx;
        } else {
            self.first_child[p] = nx;
        }
        if nx != NONE {
            self.prev_sib[nx as usize] = pv;
        }
        self.next_sib[child as usize] = NONE;
        self.prev_sib[child as usize] = NONE;
    }

    fn apex(&self, mut u: u32, mut v: u32) -> u32 {
        while u != v {
            if self.depth[u as usize] >= self.depth[v as usize] {
                u = self.parent[u as usize];
            } else {
                v = self.parent[v as usize];
            }
        }
        u
    }

    /// One pivot: push flow around the cycle closed by `arc` and exchange
    /// it against the leaving arc.
    fn pivot(&mut self, arc: usize, rc: f64) -> Result<()> {
        let s = self.net.tail(arc);
        let t = self.net.head(arc);
        let join = self.apex(s, t);

        // The cycle runs s -> t over the entering arc, then t up to the
        // apex, then down from the apex to s. Tree arcs aligned with that
        // orientation gain flow; arcs against it lose flow and block.
        let mut delta = i64::MAX;
        let mut out_node = NONE;
        let mut out_on_s_side = false;
        // Apex-to-s segment (iterated from s): strict improvement keeps the
        // candidate nearest s, the last one in cycle orientation.
        let mut w = s;
        while w != join {
            if self.pred_up[w as usize] {
                let f = self.flow[self.pred_arc[w as usize] as usize];
                if f < delta {
                    delta = f;
                    out_node = w;
                    out_on_s_side = true;
                }
            }
            w = self.parent[w as usize];
        }
        // t-to-apex segment: ties move the candidate toward the apex,
        // which is later in cycle orientation.
        let mut u = t;
        while u != join {
            if !self.pred_up[u as usize] {
                let f = self.flow[self.pred_arc[u as usize] as usize];
                if f <= delta {
                    delta = f;
                    out_node = u;
                    out_on_s_side = false;
                }
            }
            u = self.parent[u as usize];
        }
        if out_node == NONE {
            // Impossible with non-negative costs: the cycle would be a
            // negative-cost directed cycle.
            return Err(Error::InvalidNetwork(
                "unbounded pivot cycle (negative-cost cycle in input)".into(),
            ));
        }

        if delta > 0 {
            self.flow[arc] += delta;
            let mut w = s;
            while w != join {
                let a = self.pred_arc[w as usize] as usize;
                if self.pred_up[w as usize] {
                    self.flow[a] -= delta;
                } else {
                    self.flow[a] += delta;
                }
                w = self.parent[w as usize];
            }
            let mut u = t;
            while u != join {
                let a = self.pred_arc[u as usize] as usize;
                if self.pred_up[u as usize] {
                    self.flow[a] += delta;
                } else {
                    self.flow[a] -= delta;
                }
                u = self.parent[u as usize];
            }
        }

        // Re-hang the subtree cut off by the leaving arc. It contains s or
        // t; that endpoint becomes the subtree's new root, attached to the
        // other endpoint through the entering arc.
        let (q, r) = if out_on_s_side { (s, t) } else { (t, s) };
        let shift = if out_on_s_side { rc } else { -rc };
        self.rehang(q, r, out_node, arc as u32, out_on_s_side, shift);
        Ok(())
    }

    /// Re-roots the subtree that hangs below `out_node` at `q` and attaches
    /// it under `r` via the entering arc, reversing the q -> out_node chain
    /// and shifting every subtree potential by `shift`.
    fn rehang(&mut self, q: u32, r: u32, out_node: u32, e_arc: u32, q_is_tail: bool, shift: f64) {
        self.path.clear();
        self.path.push(q);
        let mut x = q;
        while x != out_node {
            x = self.parent[x as usize];
            self.path.push(x);
        }
        let saved: Vec<(u32, bool)> = self.path[..self.path.len() - 1]
            .iter()
            .map(|&a| (self.pred_arc[a as usize], self.pred_up[a as usize]))
            .collect();
        // Unlink while all parent pointers are still the old ones.
        for i in 0..self.path.len() {
            let node = self.path[i];
            self.unlink_child(node);
        }
        for (i, &(arc, up)) in saved.iter().enumerate() {
            let a = self.path[i];
            let bnode = self.path[i + 1];
            self.parent[bnode as usize] = a;
            self.pred_arc[bnode as usize] = arc;
            self.pred_up[bnode as usize] = !up;
            self.link_child(a, bnode);
        }
        self.parent[q as usize] = r;
        self.pred_arc[q as usize] = e_arc;
        self.pred_up[q as usize] = q_is_tail;
        self.link_child(r, q);

        // Fix depths and shift potentials across the re-hung subtree.
        self.depth[q as usize] = self.depth[r as usize] + 1;
        self.potential[q as usize] += shift;
        self.stack.clear();
        self.stack.push(q);
        while let Some(x) = self.stack.pop() {
            let mut c = self.first_child[x as usize];
            while c != NONE {
                self.depth[c as usize] = self.depth[x as usize] + 1;
                self.potential[c as usize] += shift;
                self.stack.push(c);
                c = self.next_sib[c as usize];
            }
        }
    }

    /// Final exact pass: potentials straight from the tree, removing any
    /// drift the incremental shifts accumulated on non-integral costs.
    fn recompute_potentials(&mut self) {
        self.potential[self.root as usize] = 0.0;
        self.stack.clear();
        self.stack.push(self.root);
        while let Some(x) = self.stack.pop() {
            let mut c = self.first_child[x as usize];
            while c != NONE {
                let a = self.pred_arc[c as usize] as usize;
                let cost = if a < self.m {
                    self.net.cost(a)
                } else {
                    self.art_cost
                };
                self.potential[c as usize] = if self.pred_up[c as usize] {
                    cost + self.potential[x as usize]
                } else {
                    self.potential[x as usize] - cost
                };
                self.stack.push(c);
                c = self.next_sib[c as usize];
            }
        }
    }
}
