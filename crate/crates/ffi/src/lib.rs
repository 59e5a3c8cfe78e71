//! C ABI over the `ssing` library.
//!
//! Every function returns an [`SsingStatus`]; results go through out-pointers.
//! On failure a message is kept per thread and can be read with
//! [`ssing_last_error`]. Panics are caught at the boundary and reported as
//! `SSING_STATUS_PANIC`.
//!
//! Designs and solution lists are opaque handles owned by the caller and
//! released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use ssing::barrier::{m22_residual, transfer_matrix, BarrierSpec};
use ssing::locus::{solve_sigma, BranchLabel};
use ssing::waveguide::{find_singularities, gain_scan, GainMedium, SearchOptions, SingularitySolution, WaveguideGeometry};
use ssing::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsingStatus {
    Ok = 0,
    InvalidArgument = 1,
    Cutoff = 2,
    ExactSingularity = 3,
    Degenerate = 4,
    NullPointer = 5,
    NoSolution = 6,
    OutOfRange = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SsingComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for SsingComplex {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

impl From<SsingComplex> for Complex64 {
    fn from(c: SsingComplex) -> Self {
        Complex64::new(c.re, c.im)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SsingMatrix {
    pub m11: SsingComplex,
    pub m12: SsingComplex,
    pub m21: SsingComplex,
    pub m22: SsingComplex,
}

/// One spectral-singularity design. Lengths in nm, energies in eV.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SsingSolution {
    pub n: u32,
    pub ell: u32,
    pub omega: f64,
    pub k: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub epsilon: SsingComplex,
    pub sqrt_epsilon: SsingComplex,
    pub residual: f64,
    pub rho: f64,
    pub sigma: f64,
}

impl From<&SingularitySolution> for SsingSolution {
    fn from(s: &SingularitySolution) -> Self {
        Self {
            n: s.branch.n,
            ell: s.ell,
            omega: s.omega,
            k: s.k,
            alpha: s.alpha,
            lambda: s.lambda,
            epsilon: s.epsilon.into(),
            sqrt_epsilon: s.refractive_index.into(),
            residual: s.residual,
            rho: s.rho_star,
            sigma: s.sigma_star,
        }
    }
}

/// Gain medium, guide geometry and search settings.
pub struct SsingDesign {
    medium: GainMedium,
    geometry: WaveguideGeometry,
    search: SearchOptions,
}

/// Solutions returned by [`ssing_design_solve`], ordered by `ell`.
pub struct SsingSolutionList {
    items: Vec<SingularitySolution>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> SsingStatus {
    match e {
        Error::InvalidArgument(_) | Error::Config(_) => SsingStatus::InvalidArgument,
        Error::Cutoff { .. } => SsingStatus::Cutoff,
        Error::ExactSingularity => SsingStatus::ExactSingularity,
        Error::Degenerate(_) => SsingStatus::Degenerate,
    }
}

struct Fail(SsingStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SsingStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, translating errors and panics into a status.
fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> SsingStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SsingStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside ssing");
            SsingStatus::Panic
        }
    }
}

/// # Safety
/// `p` is null or valid for writes of `T`.
unsafe fn write_out<T>(p: *mut T, value: T, what: &str) -> Result<(), Fail> {
    match p.as_mut() {
        Some(slot) => {
            *slot = value;
            Ok(())
        }
        None => Err(null(what)),
    }
}

/// Message of the last failed call on this thread. The pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ssing_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Transfer matrix of the barrier of half-length `alpha` and coupling `z` at wave number `k`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssing_transfer_matrix(z: SsingComplex, alpha: f64, k: f64, out: *mut SsingMatrix) -> SsingStatus {
    guard(|| {
        let m = transfer_matrix(&BarrierSpec::new(alpha, z.into())?, k)?;
        let value = SsingMatrix { m11: m.m11.into(), m12: m.m12.into(), m21: m.m21.into(), m22: m.m22.into() };
        write_out(out, value, "out")
    })
}

/// Normalized distance from a spectral singularity; zero exactly at one.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssing_m22_residual(z: SsingComplex, alpha: f64, k: f64, out: *mut f64) -> SsingStatus {
    guard(|| {
        let r = m22_residual(&BarrierSpec::new(alpha, z.into())?, k)?;
        write_out(out, r, "out")
    })
}

/// Certified points of the curve `(n, -)` at `rho`. Writes up to `capacity`
/// values of `sigma` and `alpha k` and the total number found to `count`,
/// which may exceed `capacity`. The arrays may be null when `capacity` is 0.
///
/// # Safety
/// `sigma` and `alpha_k` must be valid for `capacity` writes; `count` for one.
#[no_mangle]
pub unsafe extern "C" fn ssing_solve_sigma(
    n: u32,
    rho: f64,
    sigma: *mut f64,
    alpha_k: *mut f64,
    capacity: usize,
    count: *mut usize,
) -> SsingStatus {
    guard(|| {
        if count.is_null() {
            return Err(null("count"));
        }
        if capacity > 0 && (sigma.is_null() || alpha_k.is_null()) {
            return Err(null("output array"));
        }
        let points = solve_sigma(BranchLabel::minus(n)?, rho)?;
        for (i, p) in points.iter().take(capacity).enumerate() {
            *sigma.add(i) = p.sigma;
            *alpha_k.add(i) = p.alpha_k;
        }
        *count = points.len();
        Ok(())
    })
}

/// New design with the given Lorentz medium (eV, eV², eV) and guide height
/// `2 beta / m` in nm, using the default search settings.
///
/// # Safety
/// `out` must be valid for writes. The handle must be released with
/// [`ssing_design_free`].
#[no_mangle]
pub unsafe extern "C" fn ssing_design_new(
    omega0: f64,
    omega_p_sq: f64,
    delta: f64,
    two_beta_over_m: f64,
    out: *mut *mut SsingDesign,
) -> SsingStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let design = SsingDesign {
            medium: GainMedium::new(omega0, omega_p_sq, delta)?,
            geometry: WaveguideGeometry::from_two_beta_over_m(two_beta_over_m)?,
            search: SearchOptions::default(),
        };
        *out = Box::into_raw(Box::new(design));
        Ok(())
    })
}

/// Sets both search grid sizes.
///
/// # Safety
/// `design` must come from [`ssing_design_new`].
#[no_mangle]
pub unsafe extern "C" fn ssing_design_set_grid(design: *mut SsingDesign, points: usize) -> SsingStatus {
    guard(|| {
        let d = design.as_mut().ok_or_else(|| null("design"))?;
        if points < 2 {
            return Err(Fail(SsingStatus::InvalidArgument, "need at least 2 grid points".into()));
        }
        d.search.uniform_points = points;
        d.search.log_points = points;
        Ok(())
    })
}

/// # Safety
/// `design` is null or came from [`ssing_design_new`] and was not freed.
#[no_mangle]
pub unsafe extern "C" fn ssing_design_free(design: *mut SsingDesign) {
    if !design.is_null() {
        drop(Box::from_raw(design));
    }
}

/// All certified designs of branch `n`. An empty result is
/// `SSING_STATUS_NO_SOLUTION` and still produces a (empty) list.
///
/// # Safety
/// `design` must come from [`ssing_design_new`]; `out` must be valid for
/// writes. The list must be released with [`ssing_solutions_free`].
#[no_mangle]
pub unsafe extern "C" fn ssing_design_solve(design: *const SsingDesign, n: u32, out: *mut *mut SsingSolutionList) -> SsingStatus {
    let mut empty = false;
    let status = guard(|| {
        let d = design.as_ref().ok_or_else(|| null("design"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let items = find_singularities(&d.medium, &d.geometry, n, &d.search)?;
        empty = items.is_empty();
        *out = Box::into_raw(Box::new(SsingSolutionList { items }));
        Ok(())
    });
    if status == SsingStatus::Ok && empty {
        set_error(format!("no spectral singularities on branch {n}"));
        return SsingStatus::NoSolution;
    }
    status
}

/// Number of solutions; 0 for a null list.
///
/// # Safety
/// `list` is null or came from [`ssing_design_solve`].
#[no_mangle]
pub unsafe extern "C" fn ssing_solutions_len(list: *const SsingSolutionList) -> usize {
    list.as_ref().map_or(0, |l| l.items.len())
}

/// # Safety
/// `list` must come from [`ssing_design_solve`]; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ssing_solutions_get(list: *const SsingSolutionList, index: usize, out: *mut SsingSolution) -> SsingStatus {
    guard(|| {
        let l = list.as_ref().ok_or_else(|| null("list"))?;
        let s = l
            .items
            .get(index)
            .ok_or_else(|| Fail(SsingStatus::OutOfRange, format!("index {index} of {}", l.items.len())))?;
        write_out(out, s.into(), "out")
    })
}

/// # Safety
/// `list` is null or came from [`ssing_design_solve`] and was not freed.
#[no_mangle]
pub unsafe extern "C" fn ssing_solutions_free(list: *mut SsingSolutionList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// `log10(|T|² + |R|²)` at each `omega / omega_s` in `ratios`, keeping the
/// gain length of solution `index` fixed. Exact singularities report 600.
///
/// # Safety
/// `design` and `list` must be live handles; `ratios` and `out` must be valid
/// for `len` reads and writes.
#[no_mangle]
pub unsafe extern "C" fn ssing_gain_scan(
    design: *const SsingDesign,
    list: *const SsingSolutionList,
    index: usize,
    ratios: *const f64,
    len: usize,
    out: *mut f64,
) -> SsingStatus {
    guard(|| {
        let d = design.as_ref().ok_or_else(|| null("design"))?;
        let l = list.as_ref().ok_or_else(|| null("list"))?;
        let s = l.items.get(index).ok_or_else(|| Fail(SsingStatus::OutOfRange, format!("index {index}")))?;
        if len == 0 {
            return Ok(());
        }
        if ratios.is_null() || out.is_null() {
            return Err(null("array"));
        }
        let grid = std::slice::from_raw_parts(ratios, len);
        let scan = gain_scan(s, &d.medium, &d.geometry, grid)?;
        let dst = std::slice::from_raw_parts_mut(out, len);
        for (slot, (_, value)) in dst.iter_mut().zip(scan) {
            *slot = value;
        }
        Ok(())
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ssing_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
