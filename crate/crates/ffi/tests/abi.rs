use std::ffi::CStr;
use std::ptr;

use ssing_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ssing_last_error()) }.to_string_lossy().into_owned()
}

fn c(re: f64, im: f64) -> SsingComplex {
    SsingComplex { re, im }
}

#[test]
fn transfer_matrix_of_free_space() {
    let mut m = SsingMatrix::default();
    let status = unsafe { ssing_transfer_matrix(c(0.0, 0.0), 1.0, 1.0, &mut m) };
    assert_eq!(status, SsingStatus::Ok);
    assert_eq!(m.m11, c(1.0, 0.0));
    assert_eq!(m.m12, c(0.0, 0.0));
    assert_eq!(m.m22, c(1.0, 0.0));
}

#[test]
fn errors_carry_status_and_message() {
    let mut m = SsingMatrix::default();
    assert_eq!(unsafe { ssing_transfer_matrix(c(1.0, 0.0), -1.0, 1.0, &mut m) }, SsingStatus::InvalidArgument);
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { ssing_transfer_matrix(c(1.0, 0.0), 1.0, 1.0, ptr::null_mut()) }, SsingStatus::NullPointer);
    assert!(last_error().contains("null"));
    let mut r = 0.0;
    assert_eq!(unsafe { ssing_m22_residual(c(1.0, 0.0), 1.0, f64::NAN, &mut r) }, SsingStatus::InvalidArgument);
}

#[test]
fn residual_of_a_real_barrier() {
    let mut r = 0.0;
    assert_eq!(unsafe { ssing_m22_residual(c(0.5, 0.0), 1.0, 1.0, &mut r) }, SsingStatus::Ok);
    assert!(r > 1e-3);
}

#[test]
fn solve_sigma_reports_total_count() {
    let mut count = usize::MAX;
    assert_eq!(unsafe { ssing_solve_sigma(1, 0.7, ptr::null_mut(), ptr::null_mut(), 0, &mut count) }, SsingStatus::Ok);
    assert_eq!(count, 1);
    let (mut sigma, mut ak) = ([0.0; 4], [0.0; 4]);
    assert_eq!(
        unsafe { ssing_solve_sigma(1, 0.7, sigma.as_mut_ptr(), ak.as_mut_ptr(), 4, &mut count) },
        SsingStatus::Ok
    );
    assert!(sigma[0] > 0.0 && ak[0] > 0.0);
    assert_eq!(unsafe { ssing_solve_sigma(0, 0.7, sigma.as_mut_ptr(), ak.as_mut_ptr(), 4, &mut count) }, SsingStatus::InvalidArgument);
    assert_eq!(unsafe { ssing_solve_sigma(1, 0.7, ptr::null_mut(), ak.as_mut_ptr(), 4, &mut count) }, SsingStatus::NullPointer);
}

#[test]
fn design_round_trip() {
    unsafe {
        let mut design = ptr::null_mut();
        assert_eq!(ssing_design_new(5.0, -0.04, 1.25, 1e7, &mut design), SsingStatus::Ok);
        let mut list = ptr::null_mut();
        assert_eq!(ssing_design_solve(design, 10_000, &mut list), SsingStatus::Ok);
        assert_eq!(ssing_solutions_len(list), 3);

        let mut s = SsingSolution::default();
        assert_eq!(ssing_solutions_get(list, 1, &mut s), SsingStatus::Ok);
        assert_eq!((s.n, s.ell), (10_000, 2));
        assert!((s.lambda - 575.20).abs() < 0.01);
        assert!((2.0 * s.alpha * 1e-6 - 2.8786).abs() < 1e-4);
        assert!(s.residual < 1e-9);
        assert_eq!(ssing_solutions_get(list, 3, &mut s), SsingStatus::OutOfRange);

        let ratios = [0.9, 1.0, 1.1];
        let mut values = [0.0; 3];
        assert_eq!(ssing_gain_scan(design, list, 1, ratios.as_ptr(), 3, values.as_mut_ptr()), SsingStatus::Ok);
        assert!(values[1] >= 15.0);
        assert!(values[0] > 0.0 && values[2] > 0.0);

        ssing_solutions_free(list);
        ssing_design_free(design);
    }
}

#[test]
fn lossy_medium_has_no_solution() {
    unsafe {
        let mut design = ptr::null_mut();
        assert_eq!(ssing_design_new(5.0, 0.04, 1.25, 1e7, &mut design), SsingStatus::Ok);
        assert_eq!(ssing_design_set_grid(design, 2000), SsingStatus::Ok);
        assert_eq!(ssing_design_set_grid(design, 1), SsingStatus::InvalidArgument);
        let mut list = ptr::null_mut();
        assert_eq!(ssing_design_solve(design, 10_000, &mut list), SsingStatus::NoSolution);
        assert_eq!(ssing_solutions_len(list), 0);
        ssing_solutions_free(list);
        ssing_design_free(design);
    }
}

#[test]
fn bad_design_and_null_handles() {
    unsafe {
        let mut design = ptr::null_mut();
        assert_eq!(ssing_design_new(5.0, -0.04, -1.0, 1e7, &mut design), SsingStatus::InvalidArgument);
        assert!(design.is_null());
        let mut list = ptr::null_mut();
        assert_eq!(ssing_design_solve(ptr::null(), 2, &mut list), SsingStatus::NullPointer);
        assert_eq!(ssing_solutions_len(ptr::null()), 0);
        ssing_design_free(ptr::null_mut());
        ssing_solutions_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(ssing_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
