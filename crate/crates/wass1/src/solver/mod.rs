//! Uncapacitated minimum-cost flow: a network simplex (primary solver), a
//! successive-shortest-path oracle, and complementary-slackness certificates.
//!
//! Both solvers return integer flows (integrality comes for free from
//! integer supplies) together with node potentials. A solution is certified
//! by [`verify_optimality`]: exact flow conservation, dual feasibility of
//! the potentials (`cost(u,v) - phi(u) + phi(v) >= 0`), zero reduced cost on
//! flow-carrying arcs, and a vanishing strong-duality gap.

mod simplex;
mod ssp;

pub use simplex::solve_network_simplex;
pub use ssp::solve_ssp;

use crate::error::{Error, Result};
use crate::network::FlowNetwork;

/// Default relative tolerance for certificates.
pub const DEFAULT_CERT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    /// Some supply cannot reach any demand.
    Infeasible,
    /// The exact integer objective exceeds what `f64` represents losslessly.
    NumericLimit,
}

/// Result of a min-cost flow solve.
#[derive(Debug, Clone)]
pub struct FlowSolution {
    pub status: SolveStatus,
    /// Total cost, `sum(cost * flow)` over the real arcs.
    pub objective: f64,
    /// Exact integer objective, present when every arc cost is integral.
    pub objective_exact: Option<i128>,
    /// Per-arc flows, in the network's arc order.
    pub flows: Vec<i64>,
    /// Node potentials; optimality certificate via reduced costs.
    pub potentials: Vec<f64>,
    /// Pivots (simplex) or augmentations (ssp) performed.
    pub iterations: u64,
}

impl FlowSolution {
    fn empty() -> Self {
        Self {
            status: SolveStatus::Optimal,
            objective: 0.0,
            objective_exact: Some(0),
            flows: Vec::new(),
            potentials: Vec::new(),
            iterations: 0,
        }
    }
}

fn validate_supplies(net: &FlowNetwork, b: &[i64]) -> Result<()> {
    if b.len() != net.node_count() {
        return Err(Error::BadSupplies(format!(
            "supply vector has {} entries for {} nodes",
            b.len(),
            net.node_count()
        )));
    }
    let total: i128 = b.iter().map(|&x| x as i128).sum();
    if total != 0 {
        return Err(Error::BadSupplies(format!(
            "supplies sum to {total}, not zero"
        )));
    }
    Ok(())
}

/// Largest integer magnitude `f64` can hold exactly.
const F64_EXACT_LIMIT: i128 = 1 << 53;

/// Objective from flows: exact integer accumulation on integral-cost
/// networks, Kahan-compensated summation otherwise. The boolean reports
/// that the exact value cannot be represented losslessly as `f64`.
fn objective_of(net: &FlowNetwork, flows: &[i64]) -> (f64, Option<i128>, bool) {
    if net.has_integral_costs() {
        let mut acc: i128 = 0;
        let mut overflowed = false;
        for (a, &f) in flows.iter().enumerate() {
            let term = (net.cost(a) as i128) * (f as i128);
            match acc.checked_add(term) {
                Some(v) => acc = v,
                None => {
                    overflowed = true;
                    break;
                }
            }
        }
        if overflowed {
            (f64::INFINITY, None, true)
        } else {
            (acc as f64, Some(acc), acc.abs() > F64_EXACT_LIMIT)
        }
    } else {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (a, &f) in flows.iter().enumerate() {
            let term = net.cost(a) * f as f64;
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        (sum, None, false)
    }
}

/// Complementary-slackness certificate for a candidate solution.
#[derive(Debug, Clone)]
pub struct Certificate {
    /// Flows are non-negative and conserve supply exactly at every node.
    pub feasible: bool,
    /// Largest `|outflow - inflow - b|` over the nodes (exact integer).
    pub max_conservation_violation: i64,
    /// Smallest reduced cost over all arcs (dual feasibility wants >= 0).
    pub min_reduced_cost: f64,
    /// Largest `|reduced cost|` over arcs with positive flow.
    pub max_slack_on_flow_arcs: f64,
    /// `|sum(b * phi) - objective|`, the strong-duality gap.
    pub duality_gap: f64,
    /// Absolute tolerance applied to reduced costs.
    pub rc_tolerance: f64,
    /// Absolute tolerance applied to the duality gap.
    pub gap_tolerance: f64,
}

impl Certificate {
    pub fn passes(&self) -> bool {
        self.feasible
            && self.max_conservation_violation == 0
            && self.min_reduced_cost >= -self.rc_tolerance
            && self.max_slack_on_flow_arcs <= self.rc_tolerance
            && self.duality_gap <= self.gap_tolerance
    }

    /// Human-readable reason for a failing certificate.
    pub fn failure(&self) -> Option<String> {
        if self.passes() {
            return None;
        }
        Some(format!(
            "feasible={} violation={} min_rc={:.3e} slack={:.3e} gap={:.3e} (rc_tol={:.3e}, gap_tol={:.3e})",
            self.feasible,
            self.max_conservation_violation,
            self.min_reduced_cost,
            self.max_slack_on_flow_arcs,
            self.duality_gap,
            self.rc_tolerance,
            self.gap_tolerance
        ))
    }
}

/// Checks a solution against the optimality conditions at relative
/// tolerance `eps` (reduced costs are compared at `eps * (1 + max cost)`,
/// the duality gap at `eps * (1 + |objective|)`).
pub fn verify_optimality(
    net: &FlowNetwork,
    b: &[i64],
    sol: &FlowSolution,
    eps: f64,
) -> Certificate {
    let n = net.node_count();
    let m = net.arc_count();
    assert_eq!(sol.flows.len(), m, "flow vector length mismatch");
    assert_eq!(sol.potentials.len(), n, "potential vector length mismatch");
    assert_eq!(b.len(), n, "supply vector length mismatch");

    let mut imbalance: Vec<i128> = b.iter().map(|&x| -(x as i128)).collect();
    let mut nonnegative = true;
    for (a, &f) in sol.flows.iter().enumerate() {
        if f < 0 {
            nonnegative = false;
        }
        imbalance[net.tail(a) as usize] += f as i128;
        imbalance[net.head(a) as usize] -= f as i128;
    }
    let max_violation = imbalance
        .iter()
        .map(|v| v.unsigned_abs())
        .max()
        .unwrap_or(0)
        .min(i64::MAX as u128) as i64;

    let mut min_rc = f64::INFINITY;
    let mut max_slack = 0.0f64;
    for a in 0..m {
        let rc = net.cost(a) - sol.potentials[net.tail(a) as usize]
            + sol.potentials[net.head(a) as usize];
        min_rc = min_rc.min(rc);
        if sol.flows[a] > 0 {
            max_slack = max_slack.max(rc.abs());
        }
    }
    if m == 0 {
        min_rc = 0.0;
    }

    // Strong duality: compare sum(b * phi) with the objective.
    let mut dual = 0.0f64;
    let mut comp = 0.0f64;
    for (u, &phi) in sol.potentials.iter().enumerate() {
        let term = b[u] as f64 * phi;
        let y = term - comp;
        let t = dual + y;
        comp = (t - dual) - y;
        dual = t;
    }
    let gap = (dual - sol.objective).abs();

    Certificate {
        feasible: nonnegative && max_violation == 0,
        max_conservation_violation: max_violation,
        min_reduced_cost: min_rc,
        max_slack_on_flow_arcs: max_slack,
        duality_gap: gap,
        rc_tolerance: eps * (1.0 + net.max_arc_cost()),
        gap_tolerance: eps * (1.0 + sol.objective.abs()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::FlowNetwork;

    fn single_arc_net() -> FlowNetwork {
        FlowNetwork::new(2, vec![(0, 1, 5.0)]).unwrap()
    }

    #[test]
    fn single_arc_simplex_and_ssp() {
        let net = single_arc_net();
        let b = vec![1, -1];
        for solve in [solve_network_simplex, solve_ssp] {
            let sol = solve(&net, &b).unwrap();
            assert_eq!(sol.status, SolveStatus::Optimal);
            assert_eq!(sol.objective, 5.0);
            assert_eq!(sol.flows, vec![1]);
            assert!(verify_optimality(&net, &b, &sol, DEFAULT_CERT_EPS).passes());
        }
    }

    #[test]
    fn zero_supply_means_zero_flow() {
        let net = single_arc_net();
        let b = vec![0, 0];
        for solve in [solve_network_simplex, solve_ssp] {
            let sol = solve(&net, &b).unwrap();
            assert_eq!(sol.status, SolveStatus::Optimal);
            assert_eq!(sol.objective, 0.0);
            assert_eq!(sol.flows, vec![0]);
            assert!(verify_optimality(&net, &b, &sol, DEFAULT_CERT_EPS).passes());
        }
    }

    #[test]
    fn forced_path_and_star() {
        let path = FlowNetwork::new(3, vec![(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let b = vec![1, 0, -1];
        for solve in [solve_network_simplex, solve_ssp] {
            let sol = solve(&path, &b).unwrap();
            assert_eq!(sol.objective, 2.0);
        }
        // Star with center demand: cost is the supply-weighted spoke sum.
        let star = FlowNetwork::new(4, vec![(1, 0, 2.0), (2, 0, 3.0), (3, 0, 4.0)]).unwrap();
        let b = vec![-6, 1, 2, 3];
        for solve in [solve_network_simplex, solve_ssp] {
            let sol = solve(&star, &b).unwrap();
            assert_eq!(sol.objective, (2 + 6 + 12) as f64);
            assert!(verify_optimality(&star, &b, &sol, DEFAULT_CERT_EPS).passes());
        }
    }

    #[test]
    fn infeasible_is_detected() {
        // Demand upstream of the only arc direction.
        let net = FlowNetwork::new(2, vec![(0, 1, 1.0)]).unwrap();
        let b = vec![-1, 1];
        for solve in [solve_network_simplex, solve_ssp] {
            let sol = solve(&net, &b).unwrap();
            assert_eq!(sol.status, SolveStatus::Infeasible);
        }
    }

    #[test]
    fn unbalanced_supplies_are_rejected() {
        let net = single_arc_net();
        for solve in [solve_network_simplex, solve_ssp] {
            assert!(matches!(
                solve(&net, &[1, 0]).unwrap_err(),
                Error::BadSupplies(_)
            ));
        }
    }

    #[test]
    fn certificate_catches_cycle_perturbation() {
        // Two nodes, opposite arcs: bumping flow around the cycle keeps
        // conservation but breaks complementary slackness.
        let net = FlowNetwork::new(2, vec![(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        let b = vec![1, -1];
        let mut sol = solve_network_simplex(&net, &b).unwrap();
        assert!(verify_optimality(&net, &b, &sol, DEFAULT_CERT_EPS).passes());
        sol.flows[0] += 1;
        sol.flows[1] += 1;
        let cert = verify_optimality(&net, &b, &sol, DEFAULT_CERT_EPS);
        assert_eq!(cert.max_conservation_violation, 0);
        assert!(!cert.passes(), "slackness must fail on the perturbed cycle");
    }

    #[test]
    fn certificate_rejects_zero_potentials_with_flow() {
        let net = single_arc_net();
        let b = vec![1, -1];
        let mut sol = solve_network_simplex(&net, &b).unwrap();
        sol.potentials = vec![0.0, 0.0];
        let cert = verify_optimality(&net, &b, &sol, DEFAULT_CERT_EPS);
        assert!(!cert.passes());
        assert!(cert.max_slack_on_flow_arcs >= 5.0 - 1e-12);
    }

    #[test]
    fn scale_equivariance_of_the_objective() {
        let net =
            FlowNetwork::new(4, vec![(0, 1, 1.5), (1, 3, 2.0), (0, 2, 1.0), (2, 3, 3.5)]).unwrap();
        let base = vec![2, 0, 0, -2];
        let sol1 = solve_network_simplex(&net, &base).unwrap();
        for k in [2i64, 5, 13] {
            let scaled: Vec<i64> = base.iter().map(|&x| x * k).collect();
            let solk = solve_network_simplex(&net, &scaled).unwrap();
            assert!((solk.objective - k as f64 * sol1.objective).abs() < 1e-9);
        }
    }
}
