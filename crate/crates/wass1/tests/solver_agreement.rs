//! Cross-solver validation: the network simplex and the
//! successive-shortest-path oracle must agree on random grid instances —
//! exactly on integer-cost networks, to 1e-9 relative on Euclidean costs —
//! and both must pass the optimality certificate.

mod common;

use wass1::{
    build_grid_network, solve_network_simplex, solve_ssp, verify_optimality, GroundMetric,
    SolveStatus,
};

#[test]
fn simplex_and_ssp_agree_on_random_grids() {
    let mut rng = common::rng(0x5eed);
    // (side, instances): 102 random pairs across the three grid sizes.
    let plan = [(4u32, 60usize), (8, 30), (16, 12)];
    let mut checked = 0usize;
    for (side, count) in plan {
        let metrics = [
            GroundMetric::L1,
            GroundMetric::Linf,
            GroundMetric::L2 { l: 2 },
            GroundMetric::l2_exact(side),
        ];
        let nets: Vec<_> = metrics
            .iter()
            .map(|&m| build_grid_network(side, m).unwrap())
            .collect();
        for _ in 0..count {
            let pair = common::random_balanced_pair(side, 255, &mut rng);
            let b = pair.supplies();
            for net in &nets {
                let ns = solve_network_simplex(net, &b).unwrap();
                let ssp = solve_ssp(net, &b).unwrap();
                assert_eq!(ns.status, SolveStatus::Optimal);
                assert_eq!(ssp.status, SolveStatus::Optimal);
                assert!(ns.flows.iter().all(|&f| f >= 0));
                assert!(ssp.flows.iter().all(|&f| f >= 0));
                if net.has_integral_costs() {
                    assert_eq!(
                        ns.objective_exact, ssp.objective_exact,
                        "integer objectives must match exactly (side {side})"
                    );
                } else {
                    let denom = 1.0 + ns.objective.abs();
                    assert!(
                        (ns.objective - ssp.objective).abs() <= 1e-9 * denom,
                        "side {side}: {} vs {}",
                        ns.objective,
                        ssp.objective
                    );
                }
                for sol in [&ns, &ssp] {
                    let cert = verify_optimality(net, &b, sol, 1e-9);
                    assert!(cert.passes(), "certificate failed: {:?}", cert.failure());
                }
                checked += 1;
            }
        }
    }
    assert!(checked >= 100, "need at least 100 cross-checked instances");
}

/// Desk-scale oracle cross-check: one 32x32 pair, exact Euclidean metric,
/// reduced grid network against the support-restricted bipartite baseline.
#[test]
fn bipartite_oracle_matches_at_desk_scale() {
    let mut rng = common::rng(0x32c0de);
    let pair = common::random_balanced_pair(32, 255, &mut rng);
    let b = pair.supplies();
    let grid = build_grid_network(32, GroundMetric::l2_exact(32)).unwrap();
    let reduced = solve_network_simplex(&grid, &b).unwrap();
    assert!(verify_optimality(&grid, &b, &reduced, 1e-9).passes());
    let (bip, bip_b) = wass1::build_bipartite_network(&pair, wass1::MetricKind::L2).unwrap();
    let oracle = solve_network_simplex(&bip, &bip_b).unwrap();
    assert!(verify_optimality(&bip, &bip_b, &oracle, 1e-9).passes());
    let denom = 1.0 + reduced.objective.abs();
    assert!(
        (reduced.objective - oracle.objective).abs() <= 1e-6 * denom,
        "{} vs {}",
        reduced.objective,
        oracle.objective
    );
}

/// Random sparse networks (not grids): parallel arcs, zero-cost arcs,
/// disconnected parts, fractional costs, large supplies. The two solvers
/// must agree on feasibility and, when feasible, on the objective, with
/// passing certificates on both sides.
#[test]
fn solvers_agree_on_random_sparse_networks() {
    use rand::Rng as _;
    let mut rng = common::rng(0xF022);
    let mut feasible = 0;
    let mut infeasible = 0;
    for trial in 0..400 {
        let n = rng.random_range(2..=24usize);
        let m = rng.random_range(1..=120usize);
        let mut arcs = Vec::with_capacity(m);
        let fractional = rng.random_bool(0.5);
        for _ in 0..m {
            let t = rng.random_range(0..n as u32);
            let mut h = rng.random_range(0..n as u32);
            if h == t {
                h = (h + 1) % n as u32;
            }
            let cost = if fractional {
                (rng.random_range(0..4000) as f64) / 8.0
            } else {
                rng.random_range(0..=20) as f64
            };
            arcs.push((t, h, cost));
        }
        let net = wass1::FlowNetwork::new(n, arcs).unwrap();
        let scale: i64 = if rng.random_bool(0.2) { 1_000_000_007 } else { 1 };
        let mut b = vec![0i64; n];
        for _ in 0..rng.random_range(1..=n) {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            let amount = rng.random_range(0..=9i64) * scale;
            b[u] += amount;
            b[v] -= amount;
        }
        let ns = solve_network_simplex(&net, &b).unwrap();
        let ssp = solve_ssp(&net, &b).unwrap();
        assert_eq!(
            ns.status, ssp.status,
            "trial {trial}: feasibility verdicts differ"
        );
        match ns.status {
            SolveStatus::Optimal => {
                feasible += 1;
                if net.has_integral_costs() {
                    assert_eq!(ns.objective_exact, ssp.objective_exact, "trial {trial}");
                } else {
                    let denom = 1.0 + ns.objective.abs();
                    assert!(
                        (ns.objective - ssp.objective).abs() <= 1e-9 * denom,
                        "trial {trial}: {} vs {}",
                        ns.objective,
                        ssp.objective
                    );
                }
                for sol in [&ns, &ssp] {
                    let cert = verify_optimality(&net, &b, sol, 1e-9);
                    assert!(cert.passes(), "trial {trial}: {:?}", cert.failure());
                }
            }
            _ => infeasible += 1,
        }
    }
    // The generator must actually exercise both outcomes.
    assert!(feasible >= 50, "only {feasible} feasible instances");
    assert!(infeasible >= 20, "only {infeasible} infeasible instances");
}

/// Subgraph monotonicity under a fixed Euclidean cost: adding directions
/// never increases the optimum. The chain starts at the axis-step network
/// (whose unit costs coincide with the Euclidean step lengths) and widens
/// through the coprime direction sets.
#[test]
fn objective_is_monotone_under_subgraph_chains() {
    let mut rng = common::rng(7);
    for _ in 0..10 {
        let pair = common::random_balanced_pair(8, 100, &mut rng);
        let b = pair.supplies();
        let axis_net = build_grid_network(8, GroundMetric::L1).unwrap();
        let mut prev = solve_network_simplex(&axis_net, &b).unwrap().objective;
        for l in 1..=7 {
            let net = build_grid_network(8, GroundMetric::L2 { l }).unwrap();
            let sol = solve_network_simplex(&net, &b).unwrap();
            assert!(
                sol.objective <= prev + 1e-9,
                "L={l}: {} > {prev}",
                sol.objective
            );
            prev = sol.objective;
        }
    }
}
