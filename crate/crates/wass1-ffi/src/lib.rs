//! C ABI for the wass1 library.
//!
//! Conventions: opaque handles behind pointers, integer status codes, and
//! out-parameters for results. Every entry point tolerates null pointers.
//! A failing call stores a thread-local message retrievable through
//! [`wass1_last_error`] until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::Path;

use wass1::{
    edge_count, gamma_bounds, wasserstein, Error, GroundMetric, Histogram2D, HistogramFormat,
};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wass1Status {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    /// Non-square input or mismatched sides.
    Dimension = 5,
    /// Negative mass, zero total, or a value outside its domain.
    Value = 6,
    Overflow = 7,
    InvalidArgument = 8,
    ArcCapExceeded = 9,
    Infeasible = 10,
    NumericLimit = 11,
    CertificateFailed = 12,
}

/// Ground distance selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wass1Metric {
    L1 = 0,
    Linf = 1,
    L2 = 2,
}

/// Histogram file format selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wass1Format {
    CsvGrid = 0,
    Pgm = 1,
}

/// Opaque histogram handle; create with `wass1_histogram_load` or
/// `wass1_histogram_from_masses`, release with `wass1_histogram_free`.
pub struct Wass1Histogram(Histogram2D);

/// Result of a distance computation.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct Wass1DistanceResult {
    /// Raw integer-mass objective.
    pub value: f64,
    /// `value / total_mass` (earth-mover normalization).
    pub normalized: f64,
    /// Guaranteed relative error bound; 0 when the computation is exact.
    pub gamma_bar: f64,
    pub total_mass: i64,
    pub nodes: u64,
    pub arcs: u64,
    pub side: u32,
    /// 1 when the network realizes the ground distance exactly.
    pub exact: u8,
    pub build_seconds: f64,
    pub solve_seconds: f64,
}

/// Closed-form error bounds for the Euclidean metric at order `L`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct Wass1BoundReport {
    pub gamma_lower: f64,
    pub gamma_upper: f64,
    pub gamma_bar: f64,
    pub asymptotic: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn remember_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> Wass1Status {
    match err {
        Error::Io { .. } => Wass1Status::Io,
        Error::Parse { .. } => Wass1Status::Parse,
        Error::Value { .. } | Error::ZeroTotal => Wass1Status::Value,
        Error::NonSquare { .. } | Error::SideMismatch(_, _) => Wass1Status::Dimension,
        Error::Overflow(_) => Wass1Status::Overflow,
        Error::SideTooSmall(_)
        | Error::InvalidL { .. }
        | Error::InvalidNetwork(_)
        | Error::BadSupplies(_)
        | Error::Domain(_) => Wass1Status::InvalidArgument,
        Error::ArcCapExceeded { .. } => Wass1Status::ArcCapExceeded,
        Error::Infeasible => Wass1Status::Infeasible,
        Error::NumericLimit(_) => Wass1Status::NumericLimit,
        Error::CertificateFailed(_) => Wass1Status::CertificateFailed,
    }
}

fn fail(err: &Error) -> Wass1Status {
    remember_error(&err.to_string());
    status_of(err)
}

fn fail_with(status: Wass1Status, message: &str) -> Wass1Status {
    remember_error(message);
    status
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wass1_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the last failing call on this thread; valid until the next
/// failing call on the same thread. Never null.
#[no_mangle]
pub extern "C" fn wass1_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Loads a histogram from a file.
///
/// # Safety
/// `path` must point to a NUL-terminated string; `out` must be a valid
/// pointer. On success `*out` owns the histogram.
#[no_mangle]
pub unsafe extern "C" fn wass1_histogram_load(
    path: *const c_char,
    format: Wass1Format,
    out: *mut *mut Wass1Histogram,
) -> Wass1Status {
    if path.is_null() || out.is_null() {
        return fail_with(Wass1Status::NullArgument, "null pointer argument");
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        return fail_with(Wass1Status::InvalidUtf8, "path is not valid UTF-8");
    };
    let fmt = match format {
        Wass1Format::CsvGrid => HistogramFormat::CsvGrid,
        Wass1Format::Pgm => HistogramFormat::Pgm,
    };
    match wass1::load_histogram(Path::new(path), fmt) {
        Ok(h) => {
            *out = Box::into_raw(Box::new(Wass1Histogram(h)));
            Wass1Status::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Builds a histogram from a row-major mass array of length `side * side`.
///
/// # Safety
/// `masses` must point to `len` readable `int64_t`s; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn wass1_histogram_from_masses(
    side: u32,
    masses: *const i64,
    len: usize,
    out: *mut *mut Wass1Histogram,
) -> Wass1Status {
    if masses.is_null() || out.is_null() {
        return fail_with(Wass1Status::NullArgument, "null pointer argument");
    }
    let slice = std::slice::from_raw_parts(masses, len);
    match Histogram2D::new(side, slice.to_vec()) {
        Ok(h) => {
            *out = Box::into_raw(Box::new(Wass1Histogram(h)));
            Wass1Status::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Releases a histogram handle; null is a no-op.
///
/// # Safety
/// `h` must come from a `wass1_histogram_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wass1_histogram_free(h: *mut Wass1Histogram) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Grid side of a histogram; 0 for a null handle.
///
/// # Safety
/// `h` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn wass1_histogram_side(h: *const Wass1Histogram) -> u32 {
    h.as_ref().map_or(0, |h| h.0.side())
}

/// Total mass of a histogram; 0 for a null handle.
///
/// # Safety
/// `h` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn wass1_histogram_total(h: *const Wass1Histogram) -> i64 {
    h.as_ref().map_or(0, |h| h.0.total())
}

fn resolve_metric(metric: Wass1Metric, l: u32, side: u32) -> Result<GroundMetric, Error> {
    let gm = match metric {
        Wass1Metric::L1 | Wass1Metric::Linf => {
            if l != 0 {
                return Err(Error::Domain(
                    "the L parameter applies only to the l2 metric (pass 0)".into(),
                ));
            }
            if metric == Wass1Metric::L1 {
                GroundMetric::L1
            } else {
                GroundMetric::Linf
            }
        }
        Wass1Metric::L2 => {
            if l == 0 {
                GroundMetric::l2_exact(side)
            } else {
                GroundMetric::L2 { l }
            }
        }
    };
    gm.validate(side)?;
    Ok(gm)
}

/// Wasserstein-1 distance between two histograms of equal side.
///
/// For `WASS1_METRIC_L2`, `l` selects the approximation order; pass 0 for
/// the exact computation (`l = side - 1`). For the other metrics `l` must
/// be 0. The solve is certified internally; a failing certificate reports
/// `WASS1_STATUS_CERTIFICATE_FAILED` instead of returning a value.
///
/// # Safety
/// `a`, `b` must be live histogram handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wass1_distance(
    a: *const Wass1Histogram,
    b: *const Wass1Histogram,
    metric: Wass1Metric,
    l: u32,
    out: *mut Wass1DistanceResult,
) -> Wass1Status {
    let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
        return fail_with(Wass1Status::NullArgument, "null histogram handle");
    };
    if out.is_null() {
        return fail_with(Wass1Status::NullArgument, "null output pointer");
    }
    if a.0.side() != b.0.side() {
        return fail(&Error::SideMismatch(a.0.side(), b.0.side()));
    }
    let gm = match resolve_metric(metric, l, a.0.side()) {
        Ok(gm) => gm,
        Err(e) => return fail(&e),
    };
    match wasserstein(&a.0, &b.0, gm) {
        Ok(r) => {
            *out = Wass1DistanceResult {
                value: r.value,
                normalized: r.normalized,
                gamma_bar: r.bound.map_or(0.0, |b| b.gamma_bar),
                total_mass: r.total_mass,
                nodes: r.nodes as u64,
                arcs: r.arcs as u64,
                side: a.0.side(),
                exact: r.exact as u8,
                build_seconds: r.build_time.as_secs_f64(),
                solve_seconds: r.solve_time.as_secs_f64(),
            };
            Wass1Status::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Closed-form error bounds of the order-`l` Euclidean network (`l >= 1`).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wass1_gamma_bounds(l: u32, out: *mut Wass1BoundReport) -> Wass1Status {
    if out.is_null() {
        return fail_with(Wass1Status::NullArgument, "null output pointer");
    }
    match gamma_bounds(l) {
        Ok(b) => {
            *out = Wass1BoundReport {
                gamma_lower: b.gamma_lower,
                gamma_upper: b.gamma_upper,
                gamma_bar: b.gamma_bar,
                asymptotic: b.asymptotic,
            };
            Wass1Status::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Number of arcs of the grid network for `side` and the metric, without
/// building it. For `WASS1_METRIC_L2`, `l = 0` means exact (`side - 1`).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wass1_edge_count(
    side: u32,
    metric: Wass1Metric,
    l: u32,
    out: *mut u64,
) -> Wass1Status {
    if out.is_null() {
        return fail_with(Wass1Status::NullArgument, "null output pointer");
    }
    let gm = match resolve_metric(metric, l, side) {
        Ok(gm) => gm,
        Err(e) => return fail(&e),
    };
    match edge_count(side, gm) {
        Ok(count) => {
            *out = count;
            Wass1Status::Ok
        }
        Err(e) => fail(&e),
    }
}
