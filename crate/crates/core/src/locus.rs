//! Real reduction of the spectral-singularity condition.
//!
//! With `rho + i sigma = z/k²` and `y = sigma/(1 - rho)`, the complex equation
//! `f(w, alpha k) = 0` reduces to one real equation `F(rho, y) = 0` per branch
//! `(n, eps)`, plus the value `alpha k = G(rho, y)` the branch forces. Points on
//! `F = 0` are only candidates; [`solve_sigma`] keeps those whose barrier
//! realization has a vanishing `M22`.
//!
//! All helpers avoid forming `sqrt(y² + 1) - 1` or `1 - |1 - rho| sqrt(y² + 1)`
//! by subtraction, since both cancel catastrophically for the small `y` and
//! `rho` typical of waveguide designs.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::barrier::{m22_residual, BarrierSpec};
use crate::error::{Error, Result};
use crate::roots::{bisect, geometric_grid, sign_changes};

/// Residual threshold below which a candidate counts as a spectral singularity.
pub const CERTIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Branch `(n, eps)` of the inverse cosine in `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BranchLabel {
    pub n: u32,
    pub eps: Sign,
}

impl BranchLabel {
    /// Only `n > 0`, or `n = 0` with `eps = +`, give `r > 0`.
    pub fn new(n: u32, eps: Sign) -> Result<Self> {
        if n == 0 && eps == Sign::Minus {
            return Err(Error::invalid("branch n = 0 requires eps = +"));
        }
        Ok(Self { n, eps })
    }

    /// The physically relevant branch `(n, -)`.
    pub fn minus(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        Ok(Self { n, eps: Sign::Minus })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocusPoint {
    pub rho: f64,
    pub sigma: f64,
    pub y: f64,
    /// `alpha k` forced by the branch at this point.
    pub alpha_k: f64,
    pub branch: BranchLabel,
    /// `m22_residual` of the realization `k = 1, alpha = alpha_k, z = rho + i sigma`.
    pub residual: f64,
}

impl LocusPoint {
    pub fn is_certified(&self) -> bool {
        self.residual < CERTIFY_TOL
    }
}

/// Building blocks shared by the reduced functions, computed without cancellation.
struct Terms {
    one_minus_rho: f64,
    abs_one_minus_rho: f64,
    /// `sqrt(y² + 1)`
    s: f64,
    /// `sqrt(y² + 1) - 1`
    s_minus_one: f64,
    /// `(1 - rho)² y² + rho²`
    denom: f64,
    /// `1 - |1 - rho| sqrt(y² + 1)`
    acos_num: f64,
    /// `|1 - rho| sqrt(y² + 1) + rho - 1`, never negative.
    excess: f64,
}

impl Terms {
    fn new(rho: f64, y: f64) -> Self {
        let one_minus_rho = 1.0 - rho;
        let abs_one_minus_rho = one_minus_rho.abs();
        let s = y.hypot(1.0);
        let s_minus_one = y * y / (s + 1.0);
        let (acos_num, excess) = if one_minus_rho >= 0.0 {
            (rho - one_minus_rho * s_minus_one, one_minus_rho * s_minus_one)
        } else {
            (1.0 - abs_one_minus_rho * s, abs_one_minus_rho * (s + 1.0))
        };
        Self {
            one_minus_rho,
            abs_one_minus_rho,
            s,
            s_minus_one,
            denom: one_minus_rho * one_minus_rho * y * y + rho * rho,
            acos_num,
            excess,
        }
    }

    fn require_denom(&self) -> Result<()> {
        if self.denom > 0.0 {
            Ok(())
        } else {
            Err(Error::invalid("(rho, y) = (0, 0) is the free real barrier"))
        }
    }

    /// `|1 - rho| sqrt(y² + 1) + 1 - rho`
    fn q_num(&self) -> f64 {
        if self.one_minus_rho >= 0.0 {
            self.one_minus_rho * (self.s + 1.0)
        } else {
            self.abs_one_minus_rho * self.s_minus_one
        }
    }

    /// `arccos(acos_num / sqrt(denom))`, using `denom = acos_num² + 2 excess`.
    fn acos_term(&self) -> f64 {
        (2.0 * self.excess).sqrt().atan2(self.acos_num)
    }
}

fn require_rho_not_one(rho: f64) -> Result<()> {
    if rho == 1.0 {
        Err(Error::invalid("rho = 1 is excluded"))
    } else {
        Ok(())
    }
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

pub fn q_of(rho: f64, y: f64, alpha_k: f64) -> Result<f64> {
    require_rho_not_one(rho)?;
    let t = Terms::new(rho, y);
    Ok(alpha_k * (2.0 * t.abs_one_minus_rho * t.s_minus_one).sqrt() * sgn(y))
}

pub fn r_of(rho: f64, y: f64, alpha_k: f64) -> Result<f64> {
    require_rho_not_one(rho)?;
    let t = Terms::new(rho, y);
    Ok(alpha_k * (2.0 * t.abs_one_minus_rho * (t.s + 1.0)).sqrt())
}

/// `|q|` fixed by eliminating `r` from the real/imaginary split: the positive
/// root of the quartic in `sinh q`.
pub fn q_quartic(rho: f64, y: f64) -> Result<f64> {
    let t = Terms::new(rho, y);
    t.require_denom()?;
    Ok((2.0 * t.q_num() / t.denom).sqrt().asinh())
}

/// The argument of the inverse cosine in `R`, as a plain quotient.
///
/// Exposed so callers can confirm it stays within `[-1, 1]`; [`r_branch`] does
/// not use it.
pub fn acos_argument(rho: f64, y: f64) -> Result<f64> {
    let t = Terms::new(rho, y);
    t.require_denom()?;
    Ok((1.0 - t.abs_one_minus_rho * t.s) / t.denom.sqrt())
}

/// `pi n ± arccos((1 - |1 - rho| sqrt(y² + 1)) / sqrt((1 - rho)² y² + rho²))`,
/// the value `r` must take on branch `(n, eps)`.
pub fn r_branch(branch: BranchLabel, rho: f64, y: f64) -> Result<f64> {
    let t = Terms::new(rho, y);
    t.require_denom()?;
    Ok(PI * branch.n as f64 + branch.eps.as_f64() * t.acos_term())
}

/// `alpha k` at a point of the branch locus.
pub fn alpha_k_of(branch: BranchLabel, rho: f64, y: f64) -> Result<f64> {
    require_rho_not_one(rho)?;
    let t = Terms::new(rho, y);
    Ok(r_branch(branch, rho, y)? / (2.0 * t.abs_one_minus_rho * (t.s + 1.0)).sqrt())
}

/// `½[sinh² Q - sinh² Q̃]`; vanishes exactly on the branch curve.
///
/// For large `n` the second term overflows to infinity and the result is `-inf`,
/// which still has the right sign for bracketing.
pub fn locus_function(branch: BranchLabel, rho: f64, y: f64) -> Result<f64> {
    let t = Terms::new(rho, y);
    t.require_denom()?;
    let first = t.q_num() / t.denom;
    // sqrt((s - 1)/(s + 1)) = |y| / (s + 1)
    let damping = y.abs() / (t.s + 1.0);
    let r = PI * branch.n as f64 + branch.eps.as_f64() * t.acos_term();
    let sh = (damping * r).sinh();
    Ok(first - 0.5 * sh * sh)
}

/// How well `(q, r)` at `alpha k` satisfy the real and imaginary parts of the
/// reduced equation, `cos r cosh q = ±(1 - (1-rho)²(y²+1))/D` and
/// `sin r sinh q = ∓2(1-rho)y/D`. Returns the better of the two sign choices,
/// each mismatch measured relative to `max(1, |rhs|)`.
pub fn real_split_mismatch(rho: f64, y: f64, alpha_k: f64) -> Result<f64> {
    let t = Terms::new(rho, y);
    t.require_denom()?;
    let q = q_of(rho, y, alpha_k)?;
    let r = r_of(rho, y, alpha_k)?;
    let lhs_re = r.cos() * q.cosh();
    let lhs_im = r.sin() * q.sinh();
    let rhs_re = (1.0 - t.one_minus_rho * t.one_minus_rho * (y * y + 1.0)) / t.denom;
    let rhs_im = -2.0 * t.one_minus_rho * y / t.denom;
    let err = |sign: f64| {
        let a = (lhs_re - sign * rhs_re).abs() / rhs_re.abs().max(1.0);
        let b = (lhs_im - sign * rhs_im).abs() / rhs_im.abs().max(1.0);
        a.max(b)
    };
    Ok(err(1.0).min(err(-1.0)))
}

/// Residual of the barrier realization `k = 1, alpha = alpha_k, z = rho + i sigma`.
pub fn realization_residual(rho: f64, sigma: f64, alpha_k: f64) -> Result<f64> {
    let spec = BarrierSpec::new(alpha_k, Complex64::new(rho, sigma))?;
    m22_residual(&spec, 1.0)
}

/// Search grid for `y`.
const Y_MIN: f64 = 1e-6;
const Y_MAX: f64 = 1e6;
const Y_PER_DECADE: usize = 400;
const Y_REL_TOL: f64 = 1e-13;

/// All `y > 0` with `F = 0` at this `rho`, certified or not.
pub fn candidate_points(branch: BranchLabel, rho: f64) -> Result<Vec<LocusPoint>> {
    if !(rho < 1.0) {
        return Err(Error::invalid(format!("rho must be below 1, got {rho}")));
    }
    let decades = (Y_MAX / Y_MIN).log10().round() as usize;
    let ys = geometric_grid(Y_MIN, Y_MAX, decades * Y_PER_DECADE + 1);
    let eval = |y: f64| locus_function(branch, rho, y).unwrap_or(f64::NAN);
    let values: Vec<f64> = ys.iter().map(|&y| eval(y)).collect();
    let mut points = Vec::new();
    for i in sign_changes(&values) {
        let y = bisect(eval, ys[i], values[i], ys[i + 1], Y_REL_TOL);
        let sigma = (1.0 - rho) * y;
        let alpha_k = alpha_k_of(branch, rho, y)?;
        if !(alpha_k > 0.0) {
            continue;
        }
        let residual = realization_residual(rho, sigma, alpha_k)?;
        points.push(LocusPoint { rho, sigma, y, alpha_k, branch, residual });
    }
    Ok(points)
}

/// Certified points of the branch curve at this `rho`, ordered by `sigma`.
pub fn solve_sigma(branch: BranchLabel, rho: f64) -> Result<Vec<LocusPoint>> {
    Ok(candidate_points(branch, rho)?
        .into_iter()
        .filter(LocusPoint::is_certified)
        .collect())
}

/// Certified points over `rho_min..=rho_max`, sampled uniformly in `log(1 - rho)`
/// so that samples crowd toward `rho = 1`. Sorted by descending `rho`, then
/// ascending `sigma`.
pub fn trace_curve(
    branch: BranchLabel,
    rho_min: f64,
    rho_max: f64,
    samples: usize,
) -> Result<Vec<LocusPoint>> {
    if !(rho_min < rho_max && rho_max < 1.0) {
        return Err(Error::invalid("need rho_min < rho_max < 1"));
    }
    if samples < 2 {
        return Err(Error::invalid("need at least two samples"));
    }
    let lo = (1.0 - rho_max).ln();
    let hi = (1.0 - rho_min).ln();
    let rhos: Vec<f64> = (0..samples)
        .map(|i| match i {
            0 => rho_max,
            i if i + 1 == samples => rho_min,
            i => 1.0 - (lo + (hi - lo) * i as f64 / (samples - 1) as f64).exp(),
        })
        .collect();
    let per_rho: Vec<Vec<LocusPoint>> = rhos
        .par_iter()
        .map(|&rho| solve_sigma(branch, rho))
        .collect::<Result<_>>()?;
    let mut points: Vec<LocusPoint> = per_rho.into_iter().flatten().collect();
    points.sort_by(|a, b| {
        b.rho
            .total_cmp(&a.rho)
            .then(a.sigma.total_cmp(&b.sigma))
    });
    Ok(points)
}

/// Boundary in `rho` between a sample with no certified point and one with,
/// located by bisection to `tol`. `empty_side` and `filled_side` must straddle it.
pub fn support_edge(branch: BranchLabel, empty_side: f64, filled_side: f64, tol: f64) -> Result<f64> {
    let has = |rho: f64| solve_sigma(branch, rho).map(|p| !p.is_empty());
    if has(empty_side)? || !has(filled_side)? {
        return Err(Error::invalid("endpoints do not straddle the curve's edge"));
    }
    let (mut a, mut b) = (empty_side, filled_side);
    while (b - a).abs() > tol {
        let mid = 0.5 * (a + b);
        if has(mid)? {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(0.5 * (a + b))
}
