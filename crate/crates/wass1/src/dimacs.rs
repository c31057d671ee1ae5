//! DIMACS min-cost-flow text format, for cross-validation against
//! third-party solvers.
//!
//! Export writes the standard line forms (`p min`, `n`, `a`) with 1-based
//! node ids, zero lower bounds and capacities equal to the total supply
//! (equivalent to uncapacitated). Costs are scaled and rounded to integers;
//! a scale of 1 is lossless for unit-cost networks. Import accepts integer
//! or decimal costs, but rejects instances whose bounds would actually
//! constrain an uncapacitated solver.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::network::FlowNetwork;

/// Renders `(net, b)` as a DIMACS min-cost-flow problem. Arc costs are
/// multiplied by `cost_scale` and rounded to the nearest integer.
pub fn dimacs_string(net: &FlowNetwork, b: &[i64], cost_scale: f64, comments: &[&str]) -> String {
    assert_eq!(b.len(), net.node_count());
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "c cost scale {cost_scale}");
    let _ = writeln!(out, "p min {} {}", net.node_count(), net.arc_count());
    for (u, &supply) in b.iter().enumerate() {
        if supply != 0 {
            let _ = writeln!(out, "n {} {}", u + 1, supply);
        }
    }
    let cap: i64 = b.iter().filter(|&&x| x > 0).sum::<i64>().max(1);
    for (t, h, c) in net.arcs() {
        let scaled = (c * cost_scale).round() as i64;
        let _ = writeln!(out, "a {} {} 0 {} {}", t + 1, h + 1, cap, scaled);
    }
    out
}

pub fn write_dimacs(
    path: &Path,
    net: &FlowNetwork,
    b: &[i64],
    cost_scale: f64,
    comments: &[&str],
) -> Result<()> {
    fs::write(path, dimacs_string(net, b, cost_scale, comments)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses a DIMACS min-cost-flow problem into a network and supply vector.
pub fn parse_dimacs(label: &Path, text: &str) -> Result<(FlowNetwork, Vec<i64>)> {
    let perr = |line: usize, detail: String| Error::Parse {
        path: label.to_path_buf(),
        detail: format!("line {line}: {detail}"),
    };
    let mut node_count: Option<usize> = None;
    let mut declared_arcs = 0usize;
    let mut supplies: Vec<i64> = Vec::new();
    let mut arcs: Vec<(u32, u32, f64)> = Vec::new();
    let mut min_cap = i64::MAX;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields[0] {
            "p" => {
                if node_count.is_some() {
                    return Err(perr(lineno, "duplicate problem line".into()));
                }
                if fields.len() != 4 || fields[1] != "min" {
                    return Err(perr(
                        lineno,
                        format!("expected 'p min <nodes> <arcs>', got {line:?}"),
                    ));
                }
                let n: usize = fields[2]
                    .parse()
                    .map_err(|_| perr(lineno, "bad node count".into()))?;
                declared_arcs = fields[3]
                    .parse()
                    .map_err(|_| perr(lineno, "bad arc count".into()))?;
                supplies = vec![0; n];
                node_count = Some(n);
            }
            "n" => {
                let n = node_count
                    .ok_or_else(|| perr(lineno, "node line before problem line".into()))?;
                if fields.len() != 3 {
                    return Err(perr(lineno, "expected 'n <id> <supply>'".into()));
                }
                let id: usize = fields[1]
                    .parse()
                    .map_err(|_| perr(lineno, "bad node id".into()))?;
                if id < 1 || id > n {
                    return Err(perr(lineno, format!("node id {id} outside 1..={n}")));
                }
                let supply: i64 = fields[2]
                    .parse()
                    .map_err(|_| perr(lineno, "bad supply value".into()))?;
                supplies[id - 1] += supply;
            }
            "a" => {
                let n = node_count
                    .ok_or_else(|| perr(lineno, "arc line before problem line".into()))?;
                if fields.len() != 6 {
                    return Err(perr(
                        lineno,
                        "expected 'a <src> <dst> <low> <cap> <cost>'".into(),
                    ));
                }
                let src: usize = fields[1]
                    .parse()
                    .map_err(|_| perr(lineno, "bad source id".into()))?;
                let dst: usize = fields[2]
                    .parse()
                    .map_err(|_| perr(lineno, "bad target id".into()))?;
                if src < 1 || src > n || dst < 1 || dst > n {
                    return Err(perr(lineno, format!("arc endpoint outside 1..={n}")));
                }
                let low: i64 = fields[3]
                    .parse()
                    .map_err(|_| perr(lineno, "bad lower bound".into()))?;
                if low != 0 {
                    return Err(perr(
                        lineno,
                        format!("nonzero lower bound {low} unsupported (uncapacitated solver)"),
                    ));
                }
                let cap: i64 = fields[4]
                    .parse()
                    .map_err(|_| perr(lineno, "bad capacity".into()))?;
                let cost: f64 = fields[5]
                    .parse()
                    .map_err(|_| perr(lineno, "bad cost".into()))?;
                if cost < 0.0 {
                    return Err(perr(lineno, format!("negative cost {cost} unsupported")));
                }
                arcs.push((src as u32 - 1, dst as u32 - 1, cost));
                min_cap = min_cap.min(cap);
            }
            other => {
                return Err(perr(lineno, format!("unknown line type {other:?}")));
            }
        }
    }
    let n = node_count.ok_or_else(|| Error::Parse {
        path: label.to_path_buf(),
        detail: "missing problem line".into(),
    })?;
    if arcs.len() != declared_arcs {
        return Err(Error::Parse {
            path: label.to_path_buf(),
            detail: format!("declared {declared_arcs} arcs, found {}", arcs.len()),
        });
    }
    // A capacity below the total supply could actually bind, which the
    // uncapacitated solver cannot honor.
    let total_supply: i64 = supplies.iter().filter(|&&x| x > 0).sum();
    if !arcs.is_empty() && min_cap < total_supply {
        return Err(Error::Domain(format!(
            "instance is capacitated (capacity {min_cap} below total supply {total_supply}); \
             only uncapacitated problems are supported"
        )));
    }
    let net = FlowNetwork::new(n, arcs)?;
    Ok((net, supplies))
}

pub fn read_dimacs(path: &Path) -> Result<(FlowNetwork, Vec<i64>)> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_dimacs(path, &text)
}
