//! Command-line interface: distance computation, benchmark harness,
//! bound tables, network info, and DIMACS import/export.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::dimacs;
use crate::error::{Error, Result};
use crate::histogram::{balance, load_histogram, BalancedPair, Histogram2D, HistogramFormat};
use crate::metric::GroundMetric;
use crate::network::{self, edge_count};
use crate::solver::{solve_network_simplex, verify_optimality, SolveStatus, DEFAULT_CERT_EPS};
use crate::wasserstein::{
    gamma_bounds, wasserstein_balanced, wasserstein_with_network, DistanceResult,
};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "wass1",
    version,
    about = "Wasserstein-1 distances between 2D histograms via sparse min-cost flow networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two histogram files.
    Dist(DistArgs),
    /// All-pairs benchmark over a directory of histograms.
    Bench(BenchArgs),
    /// Closed-form approximation bounds for the Euclidean metric.
    Bounds(BoundsArgs),
    /// Grid network sizes and density, without solving anything.
    Netinfo(NetinfoArgs),
    /// Write a histogram pair as a DIMACS min-cost-flow problem.
    ExportDimacs(ExportDimacsArgs),
    /// Solve a DIMACS min-cost-flow file with the network simplex.
    SolveDimacs(SolveDimacsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    L1,
    Linf,
    L2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    #[value(name = "csv-grid")]
    CsvGrid,
    Pgm,
}

#[derive(Args)]
struct DistArgs {
    file_a: PathBuf,
    file_b: PathBuf,
    /// Ground distance between bin centers.
    #[arg(long, value_enum)]
    metric: MetricArg,
    /// Approximation order for --metric l2; defaults to N-1 (exact).
    #[arg(long = "L")]
    l: Option<u32>,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory holding two or more histograms of equal side.
    directory: PathBuf,
    #[arg(long, value_enum)]
    metric: MetricArg,
    /// Approximation orders for --metric l2 (comma separated).
    #[arg(long = "L", value_delimiter = ',')]
    l: Vec<u32>,
    /// "all" or the number of leading pairs to run.
    #[arg(long, default_value = "all")]
    pairs: String,
    /// Write the per-pair and summary rows as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for independent pairs.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Compute the exact l2 reference only up to this side.
    #[arg(long, default_value_t = 64)]
    exact_cap: u32,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BoundsArgs {
    /// Approximation orders (comma separated).
    #[arg(long = "L", value_delimiter = ',', required = true)]
    l: Vec<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct NetinfoArgs {
    /// Grid side N.
    #[arg(long = "N")]
    n: u32,
    #[arg(long, value_enum)]
    metric: MetricArg,
    #[arg(long = "L")]
    l: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExportDimacsArgs {
    file_a: PathBuf,
    file_b: PathBuf,
    #[arg(long, value_enum)]
    metric: MetricArg,
    #[arg(long = "L")]
    l: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Cost multiplier before rounding to DIMACS integer costs.
    /// Default: 1 for unit-cost networks, 1e6 for l2.
    #[arg(long)]
    cost_scale: Option<f64>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveDimacsArgs {
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Dist(args) => cmd_dist(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Bounds(args) => cmd_bounds(&args),
        Command::Netinfo(args) => cmd_netinfo(&args),
        Command::ExportDimacs(args) => cmd_export_dimacs(&args),
        Command::SolveDimacs(args) => cmd_solve_dimacs(&args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Nine significant digits, fixed layout: deterministic report formatting.
fn sig9(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.8e}")
    }
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn load(path: &Path, format: Option<FormatArg>) -> Result<Histogram2D> {
    let fmt = match format {
        Some(FormatArg::CsvGrid) => HistogramFormat::CsvGrid,
        Some(FormatArg::Pgm) => HistogramFormat::Pgm,
        None => HistogramFormat::from_path(path),
    };
    load_histogram(path, fmt)
}

fn resolve_metric(metric: MetricArg, l: Option<u32>, side: u32) -> Result<GroundMetric> {
    let resolved = match metric {
        MetricArg::L1 => {
            if l.is_some() {
                return Err(Error::Domain("--L applies only to --metric l2".into()));
            }
            GroundMetric::L1
        }
        MetricArg::Linf => {
            if l.is_some() {
                return Err(Error::Domain("--L applies only to --metric l2".into()));
            }
            GroundMetric::Linf
        }
        MetricArg::L2 => GroundMetric::L2 {
            l: l.unwrap_or_else(|| side.saturating_sub(1)),
        },
    };
    resolved.validate(side)?;
    Ok(resolved)
}

fn bound_json(b: &crate::wasserstein::BoundReport) -> serde_json::Value {
    json!({
        "L": b.l,
        "gamma_lower": b.gamma_lower,
        "gamma_upper": b.gamma_upper,
        "gamma_bar": b.gamma_bar,
        "asymptotic": b.asymptotic,
    })
}

fn cmd_dist(args: &DistArgs) -> Result<()> {
    let mu = load(&args.file_a, args.format)?;
    let nu = load(&args.file_b, args.format)?;
    if mu.side() != nu.side() {
        return Err(Error::SideMismatch(mu.side(), nu.side()));
    }
    let metric = resolve_metric(args.metric, args.l, mu.side())?;
    let pair = balance(&mu, &nu)?;
    let r = wasserstein_balanced(&pair, metric)?;
    if args.json {
        let payload = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "dist",
            "file_a": args.file_a.display().to_string(),
            "file_b": args.file_b.display().to_string(),
            "side": mu.side(),
            "metric": metric.kind().label(),
            "L": metric.l(),
            "exact": r.exact,
            "value": r.value,
            "normalized": r.normalized,
            "total_mass": r.total_mass,
            "nodes": r.nodes,
            "arcs": r.arcs,
            "build_seconds": secs(r.build_time),
            "solve_seconds": secs(r.solve_time),
            "iterations": r.iterations,
            "bound": r.bound.as_ref().map(bound_json),
        });
        println!("{payload}");
    } else {
        println!("value       {}", sig9(r.value));
        println!("normalized  {}", sig9(r.normalized));
        println!(
            "metric      {}{}",
            metric.label(),
            if r.exact {
                " (exact)"
            } else {
                " (approximate)"
            }
        );
        println!("total mass  {}", r.total_mass);
        println!("network     {} nodes, {} arcs", r.nodes, r.arcs);
        println!(
            "time        build {:.6} s, solve {:.6} s ({} pivots)",
            secs(r.build_time),
            secs(r.solve_time),
            r.iterations
        );
        if let Some(b) = &r.bound {
            println!(
                "bound       relative error <= {:.6}% (gamma_bar); exact value within [{}, {}]",
                b.gamma_bar * 100.0,
                sig9((1.0 - b.gamma_upper) * r.value),
                sig9(r.value)
            );
        }
    }
    Ok(())
}

fn cmd_bounds(args: &BoundsArgs) -> Result<()> {
    let reports: Result<Vec<_>> = args.l.iter().map(|&l| gamma_bounds(l)).collect();
    let reports = reports?;
    if args.json {
        let payload = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "bounds",
            "bounds": reports.iter().map(bound_json).collect::<Vec<_>>(),
        });
        println!("{payload}");
    } else {
        println!(
            "{:>6} {:>15} {:>15} {:>15} {:>15}",
            "L", "gamma_lower %", "gamma_upper %", "gamma_bar %", "asymptotic %"
        );
        for b in &reports {
            println!(
                "{:>6} {:>15.6} {:>15.6} {:>15.6} {:>15.6}",
                b.l,
                b.gamma_lower * 100.0,
                b.gamma_upper * 100.0,
                b.gamma_bar * 100.0,
                b.asymptotic * 100.0
            );
        }
    }
    Ok(())
}

fn cmd_netinfo(args: &NetinfoArgs) -> Result<()> {
    let metric = resolve_metric(args.metric, args.l, args.n)?;
    let nodes = (args.n as u64) * (args.n as u64);
    let arcs = edge_count(args.n, metric)?;
    let density = arcs as f64 / (nodes as f64 * nodes as f64);
    let coprime_density = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
    if args.json {
        let payload = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "netinfo",
            "side": args.n,
            "metric": metric.kind().label(),
            "L": metric.l(),
            "exact": metric.is_exact_for(args.n),
            "nodes": nodes,
            "arcs": arcs,
            "density": density,
            "coprime_density_limit": coprime_density,
        });
        println!("{payload}");
    } else {
        println!("side      {}", args.n);
        println!(
            "metric    {}{}",
            metric.label(),
            if metric.is_exact_for(args.n) {
                " (exact)"
            } else {
                " (approximate)"
            }
        );
        println!("nodes     {nodes}");
        println!("arcs      {arcs}");
        println!("density   {density:.6} (arcs / N^4; 6/pi^2 = {coprime_density:.6})");
    }
    Ok(())
}

fn cmd_export_dimacs(args: &ExportDimacsArgs) -> Result<()> {
    let mu = load(&args.file_a, args.format)?;
    let nu = load(&args.file_b, args.format)?;
    if mu.side() != nu.side() {
        return Err(Error::SideMismatch(mu.side(), nu.side()));
    }
    let metric = resolve_metric(args.metric, args.l, mu.side())?;
    let pair = balance(&mu, &nu)?;
    let net = network::build_grid_network(pair.side(), metric)?;
    let b = pair.supplies();
    let scale = args
        .cost_scale
        .unwrap_or(if net.has_integral_costs() { 1.0 } else { 1e6 });
    let header = format!(
        "wass1 grid network: side {} metric {}",
        pair.side(),
        metric.label()
    );
    let text = dimacs::dimacs_string(&net, &b, scale, &[&header]);
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_solve_dimacs(args: &SolveDimacsArgs) -> Result<()> {
    let (net, b) = dimacs::read_dimacs(&args.file)?;
    let start = std::time::Instant::now();
    let sol = solve_network_simplex(&net, &b)?;
    let solve_seconds = start.elapsed().as_secs_f64();
    match sol.status {
        SolveStatus::Optimal => {}
        SolveStatus::Infeasible => return Err(Error::Infeasible),
        SolveStatus::NumericLimit => {
            return Err(Error::NumericLimit(
                "objective exceeds the exact f64 integer range".into(),
            ))
        }
    }
    let cert = verify_optimality(&net, &b, &sol, DEFAULT_CERT_EPS);
    if let Some(reason) = cert.failure() {
        return Err(Error::CertificateFailed(reason));
    }
    if args.json {
        let payload = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "solve-dimacs",
            "file": args.file.display().to_string(),
            "nodes": net.node_count(),
            "arcs": net.arc_count(),
            "objective": sol.objective,
            "iterations": sol.iterations,
            "solve_seconds": solve_seconds,
        });
        println!("{payload}");
    } else {
        println!("objective   {}", sig9(sol.objective));
        println!(
            "network     {} nodes, {} arcs",
            net.node_count(),
            net.arc_count()
        );
        println!(
            "time        solve {solve_seconds:.6} s ({} pivots)",
            sol.iterations
        );
    }
    Ok(())
}

/// One benchmark measurement: a pair, a metric configuration, a solve.
struct BenchRecord {
    image_a: String,
    image_b: String,
    side: u32,
    metric_label: &'static str,
    l: Option<u32>,
    value: f64,
    normalized: f64,
    relative_error: Option<f64>,
    gamma_bar: Option<f64>,
    arcs: usize,
    build_seconds: f64,
    solve_seconds: f64,
}

impl BenchRecord {
    fn from_result(a: &str, b: &str, side: u32, r: &DistanceResult, rel: Option<f64>) -> Self {
        BenchRecord {
            image_a: a.to_string(),
            image_b: b.to_string(),
            side,
            metric_label: r.metric.kind().label(),
            l: r.metric.l(),
            value: r.value,
            normalized: r.normalized,
            relative_error: rel,
            gamma_bar: r.bound.as_ref().map(|b| b.gamma_bar),
            arcs: r.arcs,
            build_seconds: secs(r.build_time),
            solve_seconds: secs(r.solve_time),
        }
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn list_histogram_files(dir: &Path, format: Option<FormatArg>) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files: Vec<PathBuf> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let path = entry.path();
        if !path.is_file() {
            continue;
        }
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase());
        let keep = match format {
            Some(FormatArg::CsvGrid) => matches!(ext.as_deref(), Some("csv")),
            Some(FormatArg::Pgm) => matches!(ext.as_deref(), Some("pgm")),
            None => matches!(ext.as_deref(), Some("csv") | Some("pgm")),
        };
        if keep {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Networks for a bench run, built once and shared across pairs and
/// worker threads (they are immutable).
struct BenchPlan {
    /// `(metric, network)` per requested configuration, in output order.
    configs: Vec<(GroundMetric, crate::network::FlowNetwork)>,
    /// Exact reference for l2 error columns, when within the cap. Kept as
    /// an extra entry only when `L = side - 1` was not already requested.
    exact_metric: Option<GroundMetric>,
    extra_exact_net: Option<crate::network::FlowNetwork>,
}

impl BenchPlan {
    fn new(side: u32, metric: MetricArg, ls: &[u32], exact_cap: u32) -> Result<Self> {
        let mut configs = Vec::new();
        let mut exact_metric = None;
        let mut extra_exact_net = None;
        match metric {
            MetricArg::L1 => {
                configs.push((
                    GroundMetric::L1,
                    network::build_grid_network(side, GroundMetric::L1)?,
                ));
            }
            MetricArg::Linf => {
                configs.push((
                    GroundMetric::Linf,
                    network::build_grid_network(side, GroundMetric::Linf)?,
                ));
            }
            MetricArg::L2 => {
                for &l in ls {
                    let gm = GroundMetric::L2 { l };
                    configs.push((gm, network::build_grid_network(side, gm)?));
                }
                let exact_needed = ls.iter().any(|&l| l < side - 1);
                if exact_needed && side <= exact_cap {
                    let gm = GroundMetric::l2_exact(side);
                    exact_metric = Some(gm);
                    if !configs.iter().any(|(m, _)| *m == gm) {
                        extra_exact_net = Some(network::build_grid_network(side, gm)?);
                    }
                }
            }
        }
        Ok(Self {
            configs,
            exact_metric,
            extra_exact_net,
        })
    }

    fn exact_net(&self) -> Option<(&GroundMetric, &crate::network::FlowNetwork)> {
        let gm = self.exact_metric.as_ref()?;
        if let Some(net) = &self.extra_exact_net {
            return Some((gm, net));
        }
        self.configs
            .iter()
            .find(|(m, _)| m == gm)
            .map(|(m, net)| (m, net))
    }
}

/// The per-pair work: one balanced pair, every requested configuration.
fn bench_pair(pair: &BalancedPair, a: &str, b: &str, plan: &BenchPlan) -> Result<Vec<BenchRecord>> {
    let side = pair.side();
    let exact = match plan.exact_net() {
        Some((gm, net)) => Some(wasserstein_with_network(pair, *gm, net)?),
        None => None,
    };
    let mut records = Vec::new();
    for (gm, net) in &plan.configs {
        let r = if plan.exact_metric.as_ref() == Some(gm) {
            exact.clone().expect("exact result computed above")
        } else {
            wasserstein_with_network(pair, *gm, net)?
        };
        let rel = match (&exact, r.exact) {
            (Some(e), false) => Some(crate::wasserstein::relative_error(r.value, e.value)?),
            _ => None,
        };
        records.push(BenchRecord::from_result(a, b, side, &r, rel));
    }
    Ok(records)
}

fn mean_std_max(values: &[f64]) -> (f64, f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = if values.len() > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (mean, var.sqrt(), max)
}

const CSV_HEADER: &str =
    "row,image_a,image_b,N,metric,L,value,normalized,relative_error,gamma_bar,arcs,build_seconds,solve_seconds";

fn record_csv_line(r: &BenchRecord) -> String {
    format!(
        "pair,{},{},{},{},{},{},{},{},{},{},{},{}",
        r.image_a,
        r.image_b,
        r.side,
        r.metric_label,
        r.l.map(|l| l.to_string()).unwrap_or_default(),
        sig9(r.value),
        sig9(r.normalized),
        r.relative_error.map(sig9).unwrap_or_default(),
        r.gamma_bar.map(sig9).unwrap_or_default(),
        r.arcs,
        sig9(r.build_seconds),
        sig9(r.solve_seconds),
    )
}

/// Mean / stddev / max rows per (metric, L) group, in first-seen order;
/// each summary row applies its statistic to every numeric column.
fn summary_csv_lines(records: &[BenchRecord]) -> Vec<String> {
    let mut groups: Vec<(&'static str, Option<u32>)> = Vec::new();
    for r in records {
        if !groups.contains(&(r.metric_label, r.l)) {
            groups.push((r.metric_label, r.l));
        }
    }
    let mut lines = Vec::new();
    for (label, l) in groups {
        let members: Vec<&BenchRecord> = records
            .iter()
            .filter(|r| r.metric_label == label && r.l == l)
            .collect();
        let side = members[0].side;
        let arcs = members[0].arcs;
        let gamma = members[0].gamma_bar;
        let values: Vec<f64> = members.iter().map(|r| r.value).collect();
        let rels: Vec<f64> = members.iter().filter_map(|r| r.relative_error).collect();
        let solves: Vec<f64> = members.iter().map(|r| r.solve_seconds).collect();
        let builds: Vec<f64> = members.iter().map(|r| r.build_seconds).collect();
        for (name, idx) in [("mean", 0usize), ("stddev", 1), ("max", 2)] {
            let pick = |vals: &[f64]| {
                let (m, s, x) = mean_std_max(vals);
                [m, s, x][idx]
            };
            lines.push(format!(
                "summary,{},,{},{},{},{},,{},{},{},{},{}",
                name,
                side,
                label,
                l.map(|v| v.to_string()).unwrap_or_default(),
                sig9(pick(&values)),
                if rels.is_empty() {
                    String::new()
                } else {
                    sig9(pick(&rels))
                },
                gamma.map(sig9).unwrap_or_default(),
                arcs,
                sig9(pick(&builds)),
                sig9(pick(&solves)),
            ));
        }
    }
    lines
}

fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let files = list_histogram_files(&args.directory, args.format)?;
    if files.len() < 2 {
        return Err(Error::Domain(format!(
            "need at least two histograms in {}, found {}",
            args.directory.display(),
            files.len()
        )));
    }
    let mut histograms = Vec::with_capacity(files.len());
    for f in &files {
        histograms.push(load(f, args.format)?);
    }
    let side = histograms[0].side();
    if let Some(h) = histograms.iter().find(|h| h.side() != side) {
        return Err(Error::SideMismatch(side, h.side()));
    }

    let ls: Vec<u32> = if args.metric == MetricArg::L2 {
        let ls = if args.l.is_empty() {
            vec![side - 1]
        } else {
            args.l.clone()
        };
        for &l in &ls {
            GroundMetric::L2 { l }.validate(side)?;
        }
        ls
    } else {
        if !args.l.is_empty() {
            return Err(Error::Domain("--L applies only to --metric l2".into()));
        }
        Vec::new()
    };

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..files.len() {
        for j in i + 1..files.len() {
            pairs.push((i, j));
        }
    }
    if args.pairs != "all" {
        let k: usize = args.pairs.parse().map_err(|_| {
            Error::Domain(format!(
                "--pairs takes 'all' or a count, got {:?}",
                args.pairs
            ))
        })?;
        pairs.truncate(k);
    }

    let plan = BenchPlan::new(side, args.metric, &ls, args.exact_cap)?;
    let threads = args.threads.max(1).min(pairs.len().max(1));
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, Result<Vec<BenchRecord>>)>();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            let tx = tx.clone();
            let pairs = &pairs;
            let files = &files;
            let histograms = &histograms;
            let next = &next;
            let plan = &plan;
            scope.spawn(move || loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= pairs.len() {
                    break;
                }
                let (i, j) = pairs[idx];
                let result = balance(&histograms[i], &histograms[j])
                    .and_then(|pair| bench_pair(&pair, &stem(&files[i]), &stem(&files[j]), plan));
                if tx.send((idx, result)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
    });
    let mut slots: Vec<Option<Result<Vec<BenchRecord>>>> = (0..pairs.len()).map(|_| None).collect();
    for (idx, result) in rx {
        slots[idx] = Some(result);
    }
    let mut records: Vec<BenchRecord> = Vec::new();
    for slot in slots {
        let batch = slot.expect("worker must fill every slot")?;
        records.extend(batch);
    }

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for r in &records {
        csv.push_str(&record_csv_line(r));
        csv.push('\n');
    }
    for line in summary_csv_lines(&records) {
        csv.push_str(&line);
        csv.push('\n');
    }
    if let Some(path) = &args.out {
        std::fs::write(path, &csv).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
    }
    if args.json {
        let payload = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "bench",
            "side": side,
            "metric": match args.metric {
                MetricArg::L1 => "l1",
                MetricArg::Linf => "linf",
                MetricArg::L2 => "l2",
            },
            "pairs": pairs.len(),
            "records": records.iter().map(|r| json!({
                "image_a": r.image_a,
                "image_b": r.image_b,
                "N": r.side,
                "metric": r.metric_label,
                "L": r.l,
                "value": r.value,
                "normalized": r.normalized,
                "relative_error": r.relative_error,
                "gamma_bar": r.gamma_bar,
                "arcs": r.arcs,
                "build_seconds": r.build_seconds,
                "solve_seconds": r.solve_seconds,
            })).collect::<Vec<_>>(),
        });
        println!("{payload}");
    } else {
        print!("{csv}");
    }
    Ok(())
}
