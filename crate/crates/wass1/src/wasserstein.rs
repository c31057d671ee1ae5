//! Wasserstein-1 distances between 2D histograms, with certified solves and
//! closed-form approximation bounds.
//!
//! For the taxicab and Chebyshev ground distances the sparse grid networks
//! are exact. For the Euclidean distance the network of order `L` is exact
//! at `L = side - 1`; below that the relative error is bounded by the
//! closed forms in [`gamma_bounds`], and the guarantee
//! `(1 - gamma_upper) * approx <= exact <= approx` always holds.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::histogram::{balance, BalancedPair, Histogram2D};
use crate::metric::GroundMetric;
use crate::network::{build_grid_network, FlowNetwork};
use crate::solver::{
    solve_network_simplex, verify_optimality, Certificate, SolveStatus, DEFAULT_CERT_EPS,
};

/// Closed-form bounds on the worst-case relative error of the Euclidean
/// grid network of order `L`.
#[derive(Debug, Clone, Copy)]
pub struct BoundReport {
    pub l: u32,
    /// Error realized by the witness instance; a true lower bound.
    pub gamma_lower: f64,
    /// `c(L) * (1 - L / sqrt(1 + L^2))` with `c(L)` the tight constant.
    pub gamma_upper: f64,
    /// `1 - sqrt(1/2 + L / (2 sqrt(1 + L^2)))`; equals `gamma_upper`
    /// algebraically, kept in its pre-simplification form.
    pub gamma_bar: f64,
    /// Large-`L` expansion `1 / (8 L^2) - 11 / (128 L^4)`.
    pub asymptotic: f64,
}

/// Evaluates the bound formulas for a given approximation order `L >= 1`.
pub fn gamma_bounds(l: u32) -> Result<BoundReport> {
    if l < 1 {
        return Err(Error::Domain(
            "approximation order L must be at least 1".into(),
        ));
    }
    let lf = l as f64;
    let hyp = (1.0 + lf * lf).sqrt();
    let cos0 = lf / hyp;
    let gamma_lower = 1.0 - (1.0 + 4.0 * lf * lf).sqrt() / (lf + hyp);
    let gamma_bar = 1.0 - (0.5 + cos0 / 2.0).sqrt();
    let c_l = 1.0 / (2.0 + (2.0 + 2.0 * cos0).sqrt());
    let gamma_upper = c_l * (1.0 - cos0);
    let asymptotic = 1.0 / (8.0 * lf * lf) - 11.0 / (128.0 * lf.powi(4));
    Ok(BoundReport {
        l,
        gamma_lower,
        gamma_upper,
        gamma_bar,
        asymptotic,
    })
}

/// A computed distance together with its provenance.
#[derive(Debug, Clone)]
pub struct DistanceResult {
    /// Raw integer-mass objective (cost of the optimal flow).
    pub value: f64,
    /// `value / total_mass`: the earth-mover normalization, identical to
    /// the Wasserstein distance between the probability-normalized inputs.
    pub normalized: f64,
    pub metric: GroundMetric,
    /// True when the network realizes the ground distance exactly.
    pub exact: bool,
    pub nodes: usize,
    pub arcs: usize,
    /// Common total mass of the balanced pair.
    pub total_mass: i64,
    pub build_time: Duration,
    pub solve_time: Duration,
    pub iterations: u64,
    pub certificate: Certificate,
    /// Error bounds, present when the metric is approximate.
    pub bound: Option<BoundReport>,
}

/// Wasserstein-1 distance between two histograms of equal side.
///
/// Balances the pair, builds the reduced grid network for `metric`, solves
/// it with the network simplex and verifies the optimality certificate
/// (a failing certificate is a hard error, never a silent result).
pub fn wasserstein(
    mu: &Histogram2D,
    nu: &Histogram2D,
    metric: GroundMetric,
) -> Result<DistanceResult> {
    let pair = balance(mu, nu)?;
    wasserstein_balanced(&pair, metric)
}

/// As [`wasserstein`], for a pair that is already balanced.
pub fn wasserstein_balanced(pair: &BalancedPair, metric: GroundMetric) -> Result<DistanceResult> {
    let side = pair.side();
    metric.validate(side)?;
    let build_start = Instant::now();
    let net = build_grid_network(side, metric)?;
    let build_time = build_start.elapsed();
    solve_on_network(pair, metric, &net, build_time)
}

/// As [`wasserstein_balanced`] on a pre-built grid network, which is
/// immutable and can be shared across pairs and threads. The network must
/// be the one [`crate::network::build_grid_network`] produces for
/// `(pair.side(), metric)`.
pub fn wasserstein_with_network(
    pair: &BalancedPair,
    metric: GroundMetric,
    net: &FlowNetwork,
) -> Result<DistanceResult> {
    metric.validate(pair.side())?;
    let nodes = (pair.side() as usize) * (pair.side() as usize);
    if net.node_count() != nodes {
        return Err(Error::Domain(format!(
            "network has {} nodes, pair needs {nodes}",
            net.node_count()
        )));
    }
    solve_on_network(pair, metric, net, Duration::ZERO)
}

fn solve_on_network(
    pair: &BalancedPair,
    metric: GroundMetric,
    net: &FlowNetwork,
    build_time: Duration,
) -> Result<DistanceResult> {
    let side = pair.side();
    let b = pair.supplies();
    let solve_start = Instant::now();
    let sol = solve_network_simplex(net, &b)?;
    let solve_time = solve_start.elapsed();

    match sol.status {
        SolveStatus::Optimal => {}
        SolveStatus::Infeasible => return Err(Error::Infeasible),
        SolveStatus::NumericLimit => {
            return Err(Error::NumericLimit(
                "objective exceeds the exact f64 integer range".into(),
            ))
        }
    }
    let certificate = verify_optimality(net, &b, &sol, DEFAULT_CERT_EPS);
    if let Some(reason) = certificate.failure() {
        return Err(Error::CertificateFailed(reason));
    }

    let exact = metric.is_exact_for(side);
    let bound = match metric {
        GroundMetric::L2 { l } if !exact => Some(gamma_bounds(l)?),
        _ => None,
    };
    Ok(DistanceResult {
        value: sol.objective,
        normalized: sol.objective / pair.total() as f64,
        metric,
        exact,
        nodes: net.node_count(),
        arcs: net.arc_count(),
        total_mass: pair.total(),
        build_time,
        solve_time,
        iterations: sol.iterations,
        certificate,
        bound,
    })
}

/// Relative error `(approx - exact) / approx` of an over-approximation.
///
/// Tiny negative gaps from solver rounding (within `1e-9 * exact`) clamp to
/// zero; anything larger is a caller error.
pub fn relative_error(approx: f64, exact: f64) -> Result<f64> {
    if approx == 0.0 && exact == 0.0 {
        return Ok(0.0);
    }
    if exact <= 0.0 {
        return Err(Error::Domain(format!(
            "exact value must be positive when approx > 0 (got approx={approx}, exact={exact})"
        )));
    }
    let diff = approx - exact;
    if diff < 0.0 {
        if -diff <= 1e-9 * exact {
            return Ok(0.0);
        }
        return Err(Error::Domain(format!(
            "approximation {approx} is below the exact value {exact} beyond tolerance"
        )));
    }
    Ok(diff / approx)
}

/// Relative error of the order-`L` network on the witness instance: a unit
/// mass displaced by the step `(2L, 1)`. Both values come from actual
/// solves; the result matches `1 - sqrt(4L^2 + 1) / (L + sqrt(L^2 + 1))`.
pub fn witness_error(l: u32, side: u32) -> Result<f64> {
    if l < 1 {
        return Err(Error::Domain("witness needs L >= 1".into()));
    }
    if side <= 2 * l {
        return Err(Error::Domain(format!(
            "grid side {side} too small for the witness displacement (needs side > {})",
            2 * l
        )));
    }
    let n = (side as usize) * (side as usize);
    let mut mu = vec![0i64; n];
    let mut nu = vec![0i64; n];
    mu[0] = 1;
    nu[(2 * l * side + 1) as usize] = 1;
    let pair = BalancedPair::new(side, mu, nu)?;
    let approx = wasserstein_balanced(&pair, GroundMetric::L2 { l })?.value;
    let exact = wasserstein_balanced(&pair, GroundMetric::l2_exact(side))?.value;
    relative_error(approx, exact)
}

/// Exact worst-case relative gap between the ground distance and the grid
/// network's shortest-path metric, by all-pairs Dijkstra. Guarded to small
/// sides; quadratic in the node count.
pub fn gamma_exact(side: u32, metric: GroundMetric) -> Result<f64> {
    const MAX_SIDE: u32 = 32;
    if side > MAX_SIDE {
        return Err(Error::Domain(format!(
            "gamma_exact is all-pairs; side {side} exceeds the guard of {MAX_SIDE}"
        )));
    }
    metric.validate(side)?;
    let net = build_grid_network(side, metric)?;
    let kind = metric.kind();
    let n = (side as usize) * (side as usize);
    let coord = |u: usize| ((u as u32) / side, (u as u32) % side);
    let mut worst = 0.0f64;
    for u in 0..n {
        let dist = net.shortest_path_costs(u as u32);
        for (v, &d_net) in dist.iter().enumerate() {
            if v == u {
                continue;
            }
            let d = kind.distance(coord(u), coord(v));
            worst = worst.max(1.0 - d / d_net);
        }
    }
    Ok(worst)
}
