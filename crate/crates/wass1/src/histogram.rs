//! 2D histograms on an N x N grid: loading, validation, balancing.
//!
//! A histogram assigns a non-negative integer mass to every bin of the grid.
//! Bin `(i1, i2)` lives at row-major index `i1 * N + i2`. Two histograms are
//! compared by first *balancing* them (cross-multiplying by the opposite
//! total and reducing by the global gcd) so that both carry the same integer
//! total; the resulting supply vector `b = mu - nu` feeds the flow solvers.
//! All arithmetic is integer and overflow is reported, never wrapped.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Input file formats understood by [`load_histogram`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HistogramFormat {
    /// N lines of N comma-separated non-negative integers (LF or CRLF).
    CsvGrid,
    /// Portable graymap, `P2` (ASCII) or `P5` (binary), maxval up to 65535.
    Pgm,
}

impl HistogramFormat {
    /// Guess the format from the file extension; anything but `.pgm` is csv-grid.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("pgm") => HistogramFormat::Pgm,
            _ => HistogramFormat::CsvGrid,
        }
    }
}

/// Non-negative integer masses on an N x N grid, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram2D {
    side: u32,
    masses: Vec<i64>,
    total: i64,
}

impl Histogram2D {
    /// Validates side/length agreement, non-negativity and a positive total.
    pub fn new(side: u32, masses: Vec<i64>) -> Result<Self> {
        let expected = (side as usize) * (side as usize);
        if side == 0 || masses.len() != expected {
            return Err(Error::NonSquare {
                rows: side as usize,
                cols: if side == 0 {
                    0
                } else {
                    masses.len() / side as usize
                },
            });
        }
        let mut total: i128 = 0;
        for &m in &masses {
            if m < 0 {
                return Err(Error::Domain(format!("negative mass {m}")));
            }
            total += m as i128;
        }
        if total == 0 {
            return Err(Error::ZeroTotal);
        }
        if total > i64::MAX as i128 {
            return Err(Error::Overflow("summing histogram masses"));
        }
        Ok(Self {
            side,
            masses,
            total: total as i64,
        })
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    pub fn masses(&self) -> &[i64] {
        &self.masses
    }

    pub fn total(&self) -> i64 {
        self.total
    }

    /// Mass at bin `(i1, i2)`.
    pub fn mass(&self, i1: u32, i2: u32) -> i64 {
        self.masses[(i1 * self.side + i2) as usize]
    }

    /// Renders the histogram in csv-grid form (LF line ends, trailing newline).
    pub fn to_csv_string(&self) -> String {
        let n = self.side as usize;
        let mut out = String::new();
        for row in 0..n {
            for col in 0..n {
                if col > 0 {
                    out.push(',');
                }
                out.push_str(&self.masses[row * n + col].to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv_string()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Loads a histogram from `path` under the declared `format`.
pub fn load_histogram(path: &Path, format: HistogramFormat) -> Result<Histogram2D> {
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    match format {
        HistogramFormat::CsvGrid => parse_csv_grid(path, &bytes),
        HistogramFormat::Pgm => parse_pgm(path, &bytes),
    }
}

fn parse_csv_grid(path: &Path, bytes: &[u8]) -> Result<Histogram2D> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::Parse {
        path: path.to_path_buf(),
        detail: "not valid UTF-8".into(),
    })?;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            // Only a trailing newline (possibly CRLF) is tolerated.
            if text.lines().skip(lineno + 1).any(|l| !l.trim().is_empty()) {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    detail: format!("blank line {} inside the grid", lineno + 1),
                });
            }
            break;
        }
        let mut row = Vec::new();
        for cell in line.split(',') {
            let cell = cell.trim();
            let value: i64 = cell.parse().map_err(|_| Error::Value {
                path: path.to_path_buf(),
                detail: format!(
                    "line {}: {cell:?} is not a non-negative integer",
                    lineno + 1
                ),
            })?;
            if value < 0 {
                return Err(Error::Value {
                    path: path.to_path_buf(),
                    detail: format!("line {}: negative mass {value}", lineno + 1),
                });
            }
            row.push(value);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            detail: "empty file".into(),
        });
    }
    let cols = rows[0].len();
    if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            detail: format!("ragged rows: {} vs {} columns", cols, bad.len()),
        });
    }
    if rows.len() != cols {
        return Err(Error::NonSquare {
            rows: rows.len(),
            cols,
        });
    }
    let side = rows.len() as u32;
    let masses = rows.into_iter().flatten().collect();
    Histogram2D::new(side, masses)
}

/// Token scanner for PGM headers: whitespace-separated fields with `#`
/// comments running to end of line.
struct PgmScanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PgmScanner<'a> {
    fn skip_filler(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn token(&mut self) -> Option<&'a [u8]> {
        self.skip_filler();
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn int(&mut self, what: &str, path: &Path) -> Result<u64> {
        let tok = self.token().ok_or_else(|| Error::Parse {
            path: path.to_path_buf(),
            detail: format!("missing {what}"),
        })?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse {
                path: path.to_path_buf(),
                detail: format!("invalid {what}: {:?}", String::from_utf8_lossy(tok)),
            })
    }
}

fn parse_pgm(path: &Path, bytes: &[u8]) -> Result<Histogram2D> {
    let mut sc = PgmScanner { bytes, pos: 0 };
    let magic = sc.token().ok_or_else(|| Error::Parse {
        path: path.to_path_buf(),
        detail: "empty file".into(),
    })?;
    let binary = match magic {
        b"P2" => false,
        b"P5" => true,
        other => {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                detail: format!("unsupported magic {:?}", String::from_utf8_lossy(other)),
            })
        }
    };
    let width = sc.int("width", path)?;
    let height = sc.int("height", path)?;
    let maxval = sc.int("maxval", path)?;
    if maxval == 0 || maxval > 65535 {
        return Err(Error::Value {
            path: path.to_path_buf(),
            detail: format!("maxval {maxval} outside 1..=65535"),
        });
    }
    if width != height {
        return Err(Error::NonSquare {
            rows: height as usize,
            cols: width as usize,
        });
    }
    if width == 0 {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            detail: "zero-sized image".into(),
        });
    }
    let count = (width * height) as usize;
    let mut masses = Vec::with_capacity(count);
    if binary {
        // Exactly one whitespace byte separates the header from the raster.
        sc.pos += 1;
        let bpp = if maxval < 256 { 1 } else { 2 };
        let need = count * bpp;
        let raster = bytes
            .get(sc.pos..sc.pos + need)
            .ok_or_else(|| Error::Parse {
                path: path.to_path_buf(),
                detail: format!("raster truncated: expected {need} bytes"),
            })?;
        if bpp == 1 {
            masses.extend(raster.iter().map(|&b| b as i64));
        } else {
            masses.extend(
                raster
                    .chunks_exact(2)
                    .map(|c| u16::from_be_bytes([c[0], c[1]]) as i64),
            );
        }
    } else {
        for _ in 0..count {
            masses.push(sc.int("pixel", path)? as i64);
        }
    }
    if let Some(&bad) = masses.iter().find(|&&m| m > maxval as i64) {
        return Err(Error::Value {
            path: path.to_path_buf(),
            detail: format!("pixel {bad} exceeds maxval {maxval}"),
        });
    }
    Histogram2D::new(width as u32, masses)
}

/// A pair of histograms carrying the same total mass, in canonical form
/// (the gcd over all entries of both is 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedPair {
    side: u32,
    mu: Vec<i64>,
    nu: Vec<i64>,
    total: i64,
}

impl BalancedPair {
    /// Builds a pair from equal-total mass vectors, reducing to canonical form.
    pub fn new(side: u32, mu: Vec<i64>, nu: Vec<i64>) -> Result<Self> {
        let expected = (side as usize) * (side as usize);
        if mu.len() != expected || nu.len() != expected {
            return Err(Error::Domain(format!(
                "mass vectors must have side^2 = {expected} entries, got {} and {}",
                mu.len(),
                nu.len()
            )));
        }
        if mu.iter().chain(nu.iter()).any(|&m| m < 0) {
            return Err(Error::Domain("negative mass in balanced pair".into()));
        }
        let tm: i128 = mu.iter().map(|&m| m as i128).sum();
        let tn: i128 = nu.iter().map(|&m| m as i128).sum();
        if tm != tn {
            return Err(Error::BadSupplies(format!("totals differ: {tm} vs {tn}")));
        }
        if tm == 0 {
            return Err(Error::ZeroTotal);
        }
        let mut mu: Vec<i128> = mu.into_iter().map(|m| m as i128).collect();
        let mut nu: Vec<i128> = nu.into_iter().map(|m| m as i128).collect();
        let g = reduce_by_gcd(&mut mu, &mut nu);
        let total = tm / g;
        debug_assert!(total <= i64::MAX as i128);
        Ok(Self {
            side,
            mu: mu.into_iter().map(|m| m as i64).collect(),
            nu: nu.into_iter().map(|m| m as i64).collect(),
            total: total as i64,
        })
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    pub fn nu(&self) -> &[i64] {
        &self.nu
    }

    /// Common total mass of both sides.
    pub fn total(&self) -> i64 {
        self.total
    }

    /// Supply vector `b = mu - nu`; sums to exactly zero.
    pub fn supplies(&self) -> Vec<i64> {
        self.mu.iter().zip(&self.nu).map(|(&m, &n)| m - n).collect()
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Divides both vectors by the gcd of all their entries; returns the gcd.
fn reduce_by_gcd(mu: &mut [i128], nu: &mut [i128]) -> i128 {
    let mut g: u128 = 0;
    for &m in mu.iter().chain(nu.iter()) {
        g = gcd(g, m as u128);
        if g == 1 {
            return 1;
        }
    }
    let g = g.max(1) as i128;
    if g > 1 {
        for m in mu.iter_mut().chain(nu.iter_mut()) {
            *m /= g;
        }
    }
    g
}

/// Scales each histogram by the opposite total, then reduces by the global
/// gcd. Keeps every quantity an exact integer; the returned totals are equal.
pub fn balance(mu: &Histogram2D, nu: &Histogram2D) -> Result<BalancedPair> {
    if mu.side() != nu.side() {
        return Err(Error::SideMismatch(mu.side(), nu.side()));
    }
    let tm = mu.total() as i128;
    let tn = nu.total() as i128;
    let mut mu2: Vec<i128> = mu.masses().iter().map(|&m| m as i128 * tn).collect();
    let mut nu2: Vec<i128> = nu.masses().iter().map(|&m| m as i128 * tm).collect();
    let g = reduce_by_gcd(&mut mu2, &mut nu2);
    let total = tm * tn / g;
    if total > i64::MAX as i128 {
        return Err(Error::Overflow("balancing histograms"));
    }
    let side = mu.side();
    Ok(BalancedPair {
        side,
        mu: mu2.into_iter().map(|m| m as i64).collect(),
        nu: nu2.into_iter().map(|m| m as i64).collect(),
        total: total as i64,
    })
}
