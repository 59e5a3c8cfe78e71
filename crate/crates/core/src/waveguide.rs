//! Slab waveguide with a Lorentz-oscillator gain region.
//!
//! A TE mode of transverse order `m` in a guide of half-height `beta` sees the
//! gain region `|z| < alpha` as the complex barrier, with
//! `k = (omega/c) sqrt(1 - Omega²/omega²)` and `z = (omega/c)² (1 - eps(omega))`.
//! Designs are found by following the physical curve `omega -> (rho, sigma)`
//! and bisecting sign changes of the branch locus function along it.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::barrier::{amplitudes, m22_residual, transfer_matrix, BarrierSpec};
use crate::conventions::{wavelength_nm, HBAR_C};
use crate::error::{Error, Result};
use crate::locus::{alpha_k_of, locus_function, BranchLabel, CERTIFY_TOL};
use crate::roots::{bisect, geometric_grid, sign_changes, uniform_grid};

/// Lorentz-oscillator parameters, all as energies (`ħω₀`, `ħ²ω_p²`, `ħδ`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainMedium {
    pub omega0: f64,
    /// Negative under population inversion.
    pub omega_p_sq: f64,
    pub delta: f64,
}

impl Default for GainMedium {
    fn default() -> Self {
        Self { omega0: 5.0, omega_p_sq: -0.04, delta: 1.25 }
    }
}

impl GainMedium {
    pub fn new(omega0: f64, omega_p_sq: f64, delta: f64) -> Result<Self> {
        if !(omega0 > 0.0) || !(delta > 0.0) || !omega_p_sq.is_finite() {
            return Err(Error::invalid("need omega0 > 0, delta > 0 and finite omega_p_sq"));
        }
        Ok(Self { omega0, omega_p_sq, delta })
    }

    pub fn is_gain(&self) -> bool {
        self.omega_p_sq < 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveguideGeometry {
    /// Half-height (nm).
    pub beta: f64,
    /// Transverse mode index.
    pub m: u32,
    /// Half-width (nm); does not affect TE modes.
    pub gamma: Option<f64>,
}

impl WaveguideGeometry {
    pub fn new(beta: f64, m: u32) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() || m == 0 {
            return Err(Error::invalid("need beta > 0 and m >= 1"));
        }
        Ok(Self { beta, m, gamma: None })
    }

    /// Fundamental mode of a guide whose full height is `two_beta_over_m` (nm).
    pub fn from_two_beta_over_m(two_beta_over_m: f64) -> Result<Self> {
        Self::new(two_beta_over_m / 2.0, 1)
    }

    /// `2 beta / m` in nm; the only combination that enters the physics.
    pub fn two_beta_over_m(&self) -> f64 {
        2.0 * self.beta / self.m as f64
    }

    /// Cutoff `Omega = pi m ħc / (2 beta)` in eV.
    pub fn cutoff(&self) -> f64 {
        std::f64::consts::PI * self.m as f64 * HBAR_C / (2.0 * self.beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularitySolution {
    pub branch: BranchLabel,
    /// Intersection index, counted from the largest `rho`.
    pub ell: u32,
    /// eV
    pub omega: f64,
    /// nm⁻¹
    pub k: f64,
    /// Half-length of the gain region (nm).
    pub alpha: f64,
    /// Vacuum wavelength (nm).
    pub lambda: f64,
    pub epsilon: Complex64,
    /// Principal `sqrt(epsilon)`; negative imaginary part means gain.
    pub refractive_index: Complex64,
    pub residual: f64,
    pub rho_star: f64,
    pub sigma_star: f64,
}

impl SingularitySolution {
    pub fn two_alpha_mm(&self) -> f64 {
        2.0 * self.alpha * 1e-6
    }

    pub fn barrier(&self, medium: &GainMedium, geom: &WaveguideGeometry) -> Result<BarrierSpec> {
        BarrierSpec::new(self.alpha, coupling_of(medium, geom, self.omega)?)
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::invalid(format!("frequency must be positive, got {omega}")));
    }
    Ok(())
}

fn check_cutoff(geom: &WaveguideGeometry, omega: f64) -> Result<()> {
    check_omega(omega)?;
    let cutoff = geom.cutoff();
    if omega <= cutoff {
        return Err(Error::Cutoff { omega, cutoff });
    }
    Ok(())
}

/// `ω_p² / (ω² - ω₀² + 2iδω)`, i.e. `1 - eps`, without the cancellation of
/// forming it from the permittivity.
fn permittivity_deficit(medium: &GainMedium, omega: f64) -> Complex64 {
    let den = Complex64::new(omega * omega - medium.omega0 * medium.omega0, 2.0 * medium.delta * omega);
    medium.omega_p_sq / den
}

/// Relative permittivity `1 - ω_p² / (ω² - ω₀² + 2iδω)` of the gain region.
pub fn permittivity(medium: &GainMedium, omega: f64) -> Result<Complex64> {
    check_omega(omega)?;
    Ok(1.0 - permittivity_deficit(medium, omega))
}

/// Longitudinal wave number (nm⁻¹) of the guided mode.
pub fn k_of(geom: &WaveguideGeometry, omega: f64) -> Result<f64> {
    check_cutoff(geom, omega)?;
    let ratio = geom.cutoff() / omega;
    Ok(omega / HBAR_C * (1.0 - ratio * ratio).sqrt())
}

/// Barrier coupling `z` (nm⁻²) seen by the guided mode.
pub fn coupling_of(medium: &GainMedium, geom: &WaveguideGeometry, omega: f64) -> Result<Complex64> {
    check_cutoff(geom, omega)?;
    let big_k = omega / HBAR_C;
    Ok(big_k * big_k * permittivity_deficit(medium, omega))
}

/// `(rho, sigma) = z / k²` along the physical curve.
pub fn rho_sigma_of(medium: &GainMedium, geom: &WaveguideGeometry, omega: f64) -> Result<(f64, f64)> {
    check_cutoff(geom, omega)?;
    let detune = omega * omega - medium.omega0 * medium.omega0;
    let lorentz = detune * detune + 4.0 * omega * omega * medium.delta * medium.delta;
    let ratio = geom.cutoff() / omega;
    let scale = lorentz * (1.0 - ratio * ratio);
    Ok((
        medium.omega_p_sq * detune / scale,
        -2.0 * omega * medium.omega_p_sq * medium.delta / scale,
    ))
}

/// `(rho, sigma)` for each frequency above cutoff; others are skipped.
pub fn physical_curve(
    medium: &GainMedium,
    geom: &WaveguideGeometry,
    omega_grid: &[f64],
) -> Vec<(f64, f64)> {
    omega_grid
        .iter()
        .filter_map(|&w| rho_sigma_of(medium, geom, w).ok())
        .collect()
}

/// Tuning for [`find_singularities`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Frequency window in eV; `None` uses `(Omega (1 + 1e-9), 10 omega0)`.
    pub window: Option<(f64, f64)>,
    /// Points spread uniformly across the window.
    pub uniform_points: usize,
    /// Points spread geometrically in `omega - Omega`, which resolves the
    /// near-cutoff part of the curve for tall guides.
    pub log_points: usize,
    pub rel_tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { window: None, uniform_points: 20_000, log_points: 20_000, rel_tol: 1e-15 }
    }
}

impl SearchOptions {
    pub fn resolve_window(&self, medium: &GainMedium, geom: &WaveguideGeometry) -> (f64, f64) {
        self.window
            .unwrap_or((geom.cutoff() * (1.0 + 1e-9), 10.0 * medium.omega0))
    }
}

/// Locus function along the physical curve; NaN where undefined or `rho >= 1`.
fn curve_locus(medium: &GainMedium, geom: &WaveguideGeometry, branch: BranchLabel, omega: f64) -> f64 {
    match rho_sigma_of(medium, geom, omega) {
        Ok((rho, sigma)) if rho < 1.0 => {
            locus_function(branch, rho, sigma / (1.0 - rho)).unwrap_or(f64::NAN)
        }
        _ => f64::NAN,
    }
}

fn search_grid(geom: &WaveguideGeometry, lo: f64, hi: f64, opts: &SearchOptions) -> Vec<f64> {
    let mut grid = uniform_grid(lo, hi, opts.uniform_points.max(2));
    let cutoff = geom.cutoff();
    if opts.log_points >= 2 && lo > cutoff {
        grid.extend(
            geometric_grid(lo - cutoff, hi - cutoff, opts.log_points)
                .into_iter()
                .map(|d| cutoff + d)
                .filter(|&w| w >= lo && w <= hi),
        );
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// All certified spectral singularities of branch `(n, -)` in the window,
/// labelled `ell = 1, 2, ...` by descending `rho`.
pub fn find_singularities(
    medium: &GainMedium,
    geom: &WaveguideGeometry,
    n: u32,
    opts: &SearchOptions,
) -> Result<Vec<SingularitySolution>> {
    let branch = BranchLabel::minus(n)?;
    let (lo, hi) = opts.resolve_window(medium, geom);
    if !(hi > lo) {
        return Ok(Vec::new());
    }
    let lo = lo.max(geom.cutoff() * (1.0 + 1e-12));
    if !(hi > lo) {
        return Ok(Vec::new());
    }
    let grid = search_grid(geom, lo, hi, opts);
    let values: Vec<f64> = grid.par_iter().map(|&w| curve_locus(medium, geom, branch, w)).collect();

    let eval = |w: f64| curve_locus(medium, geom, branch, w);
    let mut found: Vec<SingularitySolution> = sign_changes(&values)
        .into_par_iter()
        .filter_map(|i| {
            let omega = bisect(eval, grid[i], values[i], grid[i + 1], opts.rel_tol);
            certify(medium, geom, branch, omega).ok().flatten()
        })
        .collect();

    found.sort_by(|a, b| {
        let drho = b.rho_star - a.rho_star;
        if drho.abs() < 1e-12 {
            a.sigma_star.total_cmp(&b.sigma_star)
        } else {
            b.rho_star.total_cmp(&a.rho_star)
        }
    });
    for (i, s) in found.iter_mut().enumerate() {
        s.ell = i as u32 + 1;
    }
    Ok(found)
}

/// Builds the design at `omega` and keeps it only if the residual certifies it.
fn certify(
    medium: &GainMedium,
    geom: &WaveguideGeometry,
    branch: BranchLabel,
    omega: f64,
) -> Result<Option<SingularitySolution>> {
    let (rho, sigma) = rho_sigma_of(medium, geom, omega)?;
    if !(rho < 1.0) || !(sigma > 0.0) {
        return Ok(None);
    }
    let k = k_of(geom, omega)?;
    let alpha_k = alpha_k_of(branch, rho, sigma / (1.0 - rho))?;
    if !(alpha_k > 0.0) {
        return Ok(None);
    }
    let alpha = alpha_k / k;
    let spec = BarrierSpec::new(alpha, coupling_of(medium, geom, omega)?)?;
    let residual = m22_residual(&spec, k)?;
    if !(residual < CERTIFY_TOL) {
        return Ok(None);
    }
    let epsilon = permittivity(medium, omega)?;
    Ok(Some(SingularitySolution {
        branch,
        ell: 0,
        omega,
        k,
        alpha,
        lambda: wavelength_nm(omega),
        epsilon,
        refractive_index: epsilon.sqrt(),
        residual,
        rho_star: rho,
        sigma_star: sigma,
    }))
}

/// The `ell`-th design of branch `n`, if present.
pub fn find_design(
    medium: &GainMedium,
    geom: &WaveguideGeometry,
    n: u32,
    ell: u32,
    opts: &SearchOptions,
) -> Result<Option<SingularitySolution>> {
    Ok(find_singularities(medium, geom, n, opts)?
        .into_iter()
        .find(|s| s.ell == ell))
}

/// Frequencies that reproduce `rho_star` and `sigma_star` separately, each
/// solved near `omega_hint`. Agreement of the two is a consistency check on a
/// solution.
pub fn omega_from_rho_and_sigma(
    medium: &GainMedium,
    geom: &WaveguideGeometry,
    rho_star: f64,
    sigma_star: f64,
    omega_hint: f64,
) -> Result<(f64, f64)> {
    let from_rho = solve_near(|w| rho_sigma_of(medium, geom, w).map(|p| p.0 - rho_star), geom, omega_hint)?;
    let from_sigma = solve_near(|w| rho_sigma_of(medium, geom, w).map(|p| p.1 - sigma_star), geom, omega_hint)?;
    Ok((from_rho, from_sigma))
}

fn solve_near<F: Fn(f64) -> Result<f64>>(f: F, geom: &WaveguideGeometry, hint: f64) -> Result<f64> {
    let eval = |w: f64| f(w).unwrap_or(f64::NAN);
    let floor = geom.cutoff();
    let mut step = 1e-10;
    while step < 0.5 {
        let a = (hint * (1.0 - step)).max(floor * (1.0 + 1e-12));
        let b = hint * (1.0 + step);
        let (fa, fb) = (eval(a), eval(b));
        if fa.is_finite() && fb.is_finite() && (fa > 0.0) != (fb > 0.0) {
            return Ok(bisect(eval, a, fa, b, 1e-15));
        }
        step *= 2.0;
    }
    Err(Error::Degenerate(format!("no sign change found near omega = {hint}")))
}

/// Value reported by [`gain_scan`] when `M22` underflows at an exact singularity.
pub const LOG10_CAP: f64 = 600.0;

/// `log10(|T|² + |R|²)` against `omega / omega_s`, keeping the gain-region
/// length and geometry of `solution` fixed.
pub fn gain_scan(
    solution: &SingularitySolution,
    medium: &GainMedium,
    geom: &WaveguideGeometry,
    ratio_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    ratio_grid
        .par_iter()
        .map(|&ratio| {
            let omega = ratio * solution.omega;
            let spec = BarrierSpec::new(solution.alpha, coupling_of(medium, geom, omega)?)?;
            let m = transfer_matrix(&spec, k_of(geom, omega)?)?;
            if m.m22.norm() < 1e-300 {
                return Ok((ratio, LOG10_CAP));
            }
            let value = amplitudes(&m)?.total_intensity().log10();
            Ok((ratio, value.min(LOG10_CAP)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm() -> WaveguideGeometry {
        WaveguideGeometry::from_two_beta_over_m(1e7).unwrap()
    }

    #[test]
    fn permittivity_examples() {
        let m = GainMedium::new(5.0, -0.04, 1.25).unwrap();
        let e = permittivity(&m, 5.0).unwrap();
        assert!((e - Complex64::new(1.0, -0.0032)).norm() < 1e-15);
        let vac = GainMedium::new(5.0, 0.0, 1.25).unwrap();
        assert_eq!(permittivity(&vac, 2.0).unwrap(), Complex64::new(1.0, 0.0));
        assert!(permittivity(&m, 0.0).is_err());
        assert!(permittivity(&m, -1.0).is_err());
    }

    #[test]
    fn cutoff_and_wave_number() {
        let g = WaveguideGeometry::from_two_beta_over_m(1e7).unwrap();
        let cutoff = g.cutoff();
        assert!((cutoff - std::f64::consts::PI * HBAR_C / 1e7).abs() < 1e-18);
        assert!(matches!(k_of(&g, cutoff), Err(Error::Cutoff { .. })));
        let k = k_of(&g, 2.15548).unwrap();
        let free = 2.15548 / HBAR_C;
        let rel = (free - k) / free;
        assert!(rel > 0.0 && rel < 1e-9);
        // only 2 beta / m matters
        let g2 = WaveguideGeometry::new(1.5e7, 3).unwrap();
        assert!((g2.cutoff() - cutoff).abs() < 1e-15 * cutoff);
        assert!(WaveguideGeometry::new(0.0, 1).is_err());
        assert!(WaveguideGeometry::new(1.0, 0).is_err());
    }

    #[test]
    fn rho_sigma_agree_with_coupling() {
        let m = GainMedium::default();
        let g = cm();
        for w in [0.5, 2.15548, 5.0, 7.6, 30.0] {
            let (rho, sigma) = rho_sigma_of(&m, &g, w).unwrap();
            let k = k_of(&g, w).unwrap();
            let z = coupling_of(&m, &g, w).unwrap() / (k * k);
            assert!((rho - z.re).abs() <= 1e-14 * rho.abs(), "{rho} {}", z.re);
            assert!((sigma - z.im).abs() <= 1e-14 * sigma.abs());
            assert!(sigma > 0.0);
        }
        let vac = GainMedium::new(5.0, 0.0, 1.25).unwrap();
        assert_eq!(rho_sigma_of(&vac, &g, 3.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn physical_curve_shape() {
        let m = GainMedium::default();
        let g = WaveguideGeometry::from_two_beta_over_m(310.0 * 2.0).unwrap();
        let below = physical_curve(&m, &g, &[0.1, 4.999, 5.0, 5.001, 1e6]);
        // 0.1 eV is below cutoff (~1 eV) and skipped
        assert_eq!(below.len(), 4);
        // rho changes sign at omega0
        assert!(below[0].0 > 0.0);
        assert_eq!(below[1].0, 0.0);
        assert!(below[2].0 < 0.0);
        assert!(below[3].0.abs() < 1e-12 && below[3].1.abs() < 1e-12);
    }

    #[test]
    fn loss_medium_has_no_singularities() {
        let m = GainMedium::new(5.0, 0.04, 1.25).unwrap();
        let opts = SearchOptions { uniform_points: 4000, log_points: 4000, ..Default::default() };
        assert!(find_singularities(&m, &cm(), 10_000, &opts).unwrap().is_empty());
        assert!(find_singularities(&m, &cm(), 3, &opts).unwrap().is_empty());
    }

    #[test]
    fn empty_window_gives_nothing() {
        let opts = SearchOptions { window: Some((3.0, 2.0)), ..Default::default() };
        assert!(find_singularities(&GainMedium::default(), &cm(), 10, &opts).unwrap().is_empty());
    }
}
