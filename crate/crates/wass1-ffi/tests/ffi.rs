//! Exercises the C entry points from Rust, plus an end-to-end check that a
//! real C program compiles against the generated header and links the
//! shared library.

use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::ptr;

use wass1_ffi::*;

fn make_histogram(side: u32, masses: &[i64]) -> *mut Wass1Histogram {
    let mut h = ptr::null_mut();
    let status =
        unsafe { wass1_histogram_from_masses(side, masses.as_ptr(), masses.len(), &mut h) };
    assert_eq!(status, Wass1Status::Ok);
    assert!(!h.is_null());
    h
}

#[test]
fn version_is_a_c_string() {
    let v = unsafe { CStr::from_ptr(wass1_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn distance_on_unit_masses() {
    let a = make_histogram(2, &[1, 0, 0, 0]);
    let b = make_histogram(2, &[0, 0, 0, 1]);
    let mut out = unsafe { std::mem::zeroed::<Wass1DistanceResult>() };
    let status = unsafe { wass1_distance(a, b, Wass1Metric::L2, 0, &mut out) };
    assert_eq!(status, Wass1Status::Ok);
    assert!((out.value - 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(out.exact, 1);
    assert_eq!(out.gamma_bar, 0.0);
    assert_eq!(out.side, 2);
    assert_eq!(out.total_mass, 1);

    let status = unsafe { wass1_distance(a, b, Wass1Metric::L1, 0, &mut out) };
    assert_eq!(status, Wass1Status::Ok);
    assert_eq!(out.value, 2.0);
    unsafe {
        wass1_histogram_free(a);
        wass1_histogram_free(b);
    }
}

#[test]
fn side_mismatch_and_null_arguments_are_reported() {
    let a = make_histogram(2, &[1, 0, 0, 0]);
    let c = make_histogram(3, &[1, 0, 0, 0, 0, 0, 0, 0, 0]);
    let mut out = unsafe { std::mem::zeroed::<Wass1DistanceResult>() };
    assert_eq!(
        unsafe { wass1_distance(a, c, Wass1Metric::L1, 0, &mut out) },
        Wass1Status::Dimension
    );
    let msg = unsafe { CStr::from_ptr(wass1_last_error()) };
    assert!(msg.to_str().unwrap().contains("sides differ"));
    assert_eq!(
        unsafe { wass1_distance(ptr::null(), c, Wass1Metric::L1, 0, &mut out) },
        Wass1Status::NullArgument
    );
    // L parameter outside l2.
    assert_eq!(
        unsafe { wass1_distance(a, a, Wass1Metric::L1, 3, &mut out) },
        Wass1Status::InvalidArgument
    );
    unsafe {
        wass1_histogram_free(a);
        wass1_histogram_free(c);
    }
}

#[test]
fn invalid_masses_are_rejected() {
    let mut h = ptr::null_mut();
    let masses = [0i64, 0, 0, 0];
    let status = unsafe { wass1_histogram_from_masses(2, masses.as_ptr(), masses.len(), &mut h) };
    assert_eq!(status, Wass1Status::Value);
    let masses = [1i64, 2, 3];
    let status = unsafe { wass1_histogram_from_masses(2, masses.as_ptr(), masses.len(), &mut h) };
    assert_eq!(status, Wass1Status::Dimension);
}

#[test]
fn load_reports_io_errors() {
    let path = CString::new("/nonexistent/histogram.csv").unwrap();
    let mut h = ptr::null_mut();
    let status = unsafe { wass1_histogram_load(path.as_ptr(), Wass1Format::CsvGrid, &mut h) };
    assert_eq!(status, Wass1Status::Io);
}

#[test]
fn load_csv_and_compute() {
    let dir = std::env::temp_dir().join("wass1_ffi_test");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("h.csv");
    std::fs::write(&file, "0,1\n2,3\n").unwrap();
    let cpath = CString::new(file.to_str().unwrap()).unwrap();
    let mut h = ptr::null_mut();
    let status = unsafe { wass1_histogram_load(cpath.as_ptr(), Wass1Format::CsvGrid, &mut h) };
    assert_eq!(status, Wass1Status::Ok);
    assert_eq!(unsafe { wass1_histogram_side(h) }, 2);
    assert_eq!(unsafe { wass1_histogram_total(h) }, 6);
    unsafe { wass1_histogram_free(h) };
}

#[test]
fn bounds_and_edge_counts() {
    let mut b = unsafe { std::mem::zeroed::<Wass1BoundReport>() };
    assert_eq!(unsafe { wass1_gamma_bounds(2, &mut b) }, Wass1Status::Ok);
    assert!((b.gamma_bar * 100.0 - 2.675).abs() < 1e-3);
    assert_eq!(
        unsafe { wass1_gamma_bounds(0, &mut b) },
        Wass1Status::InvalidArgument
    );

    let mut count = 0u64;
    assert_eq!(
        unsafe { wass1_edge_count(32, Wass1Metric::L2, 0, &mut count) },
        Wass1Status::Ok
    );
    assert_eq!(count, 638_692);
    assert_eq!(
        unsafe { wass1_edge_count(32, Wass1Metric::L1, 0, &mut count) },
        Wass1Status::Ok
    );
    assert_eq!(count, 3_968);
}

/// Compiles and runs a small C client against the generated header and the
/// cdylib, proving the ABI surface is usable from C.
#[test]
fn c_client_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = crate_dir.join("include");
    let lib_dir = crate_dir.join("../../target/debug");
    assert!(
        header_dir.join("wass1.h").exists(),
        "header must be generated by build.rs"
    );
    let work = std::env::temp_dir().join("wass1_c_client");
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("client.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <math.h>
#include "wass1.h"

int main(void) {
    int64_t mu[4] = {1, 0, 0, 0};
    int64_t nu[4] = {0, 0, 0, 1};
    Wass1Histogram *a = NULL, *b = NULL;
    if (wass1_histogram_from_masses(2, mu, 4, &a) != WASS1_STATUS_OK) return 1;
    if (wass1_histogram_from_masses(2, nu, 4, &b) != WASS1_STATUS_OK) return 2;
    Wass1DistanceResult r;
    if (wass1_distance(a, b, WASS1_METRIC_L2, 0, &r) != WASS1_STATUS_OK) return 3;
    if (fabs(r.value - sqrt(2.0)) > 1e-12) return 4;
    if (!r.exact) return 5;
    uint64_t arcs = 0;
    if (wass1_edge_count(32, WASS1_METRIC_L2, 0, &arcs) != WASS1_STATUS_OK) return 6;
    if (arcs != 638692u) return 7;
    wass1_histogram_free(a);
    wass1_histogram_free(b);
    printf("ok %s\n", wass1_version());
    return 0;
}
"#,
    )
    .unwrap();
    let exe = work.join("client");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let compile = std::process::Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg("-L")
        .arg(&lib_dir)
        .arg("-lwass1_ffi")
        .arg("-lm")
        .arg("-o")
        .arg(&exe)
        .output()
        .expect("invoke C compiler");
    assert!(
        compile.status.success(),
        "C compile failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );
    let run = std::process::Command::new(&exe)
        .env("LD_LIBRARY_PATH", &lib_dir)
        .output()
        .expect("run C client");
    assert!(
        run.status.success(),
        "C client exited {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
