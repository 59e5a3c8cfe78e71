//! Scattering off the complex barrier `v(x) = z` for `|x| < alpha`, zero outside.
//!
//! The transfer matrix maps the plane-wave coefficients `(A, B)` of
//! `A e^{ikx} + B e^{-ikx}` on the far left to those on the far right.
//! [`transfer_matrix`] evaluates the closed form; [`oracle_transfer_matrix`]
//! rebuilds the same matrix by matching plane waves at both edges and solving
//! the 4×4 linear system, and is kept independent of the closed form so the
//! two can be checked against each other.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::conventions::principal_sqrt_upper;
use crate::error::{Error, Result};
use crate::locus;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Below this `|w|` the transfer matrix is evaluated in a form without the
/// removable `1/w` singularity.
const SMALL_W: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierSpec {
    /// Half-length of the barrier (nm).
    pub alpha: f64,
    /// Complex coupling constant (nm⁻²).
    pub z: Complex64,
}

impl BarrierSpec {
    pub fn new(alpha: f64, z: Complex64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::invalid(format!("barrier half-length must be positive, got {alpha}")));
        }
        Ok(Self { alpha, z })
    }

    /// Potential at position `x`.
    pub fn potential(&self, x: f64) -> Complex64 {
        if x.abs() < self.alpha {
            self.z
        } else {
            Complex64::new(0.0, 0.0)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl TransferMatrix {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self { m11: one, m12: zero, m21: zero, m22: one }
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.entries().iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    /// Transmission amplitude, identical from both sides.
    pub t: Complex64,
    pub r_left: Complex64,
    pub r_right: Complex64,
}

impl ScatteringAmplitudes {
    /// `|T|² + |R|²` with `R` the left reflection amplitude (equal to the
    /// right one for this potential).
    pub fn total_intensity(&self) -> f64 {
        self.t.norm_sqr() + self.r_left.norm_sqr()
    }
}

/// Dimensionless description of a barrier at wave number `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedVariables {
    pub w: Complex64,
    pub rho: f64,
    pub sigma: f64,
    pub y: f64,
    pub q: f64,
    pub r: f64,
}

impl ReducedVariables {
    pub fn new(spec: &BarrierSpec, k: f64) -> Result<Self> {
        check_k(k)?;
        let zeta = spec.z / (k * k);
        let (rho, sigma) = (zeta.re, zeta.im);
        if rho == 1.0 {
            return Err(Error::invalid("rho = 1 has no reduced description"));
        }
        let y = sigma / (1.0 - rho);
        let alpha_k = spec.alpha * k;
        Ok(Self {
            w: principal_sqrt_upper(1.0 - zeta),
            rho,
            sigma,
            y,
            q: locus::q_of(rho, y, alpha_k)?,
            r: locus::r_of(rho, y, alpha_k)?,
        })
    }
}

/// `e^{-2iχw}(1+w)² - e^{2iχw}(1-w)²`.
pub fn f_func(w: Complex64, chi: f64) -> Complex64 {
    let phase = 2.0 * I * chi * w;
    (-phase).exp() * (1.0 + w).powi(2) - phase.exp() * (1.0 - w).powi(2)
}

/// `sin(x)/x`, analytic at the origin.
pub(crate) fn sinc(x: Complex64) -> Complex64 {
    if x.norm() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `f(w, χ) / (4w)` rewritten as `cos(2χw) - i(1+w²) χ sinc(2χw)`, valid at `w = 0`.
fn f_over_4w_regular(w: Complex64, chi: f64) -> Complex64 {
    let arg = 2.0 * chi * w;
    arg.cos() - I * (1.0 + w * w) * chi * sinc(arg)
}

fn check_k(k: f64) -> Result<()> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::invalid(format!("wave number must be positive, got {k}")));
    }
    Ok(())
}

pub fn transfer_matrix(spec: &BarrierSpec, k: f64) -> Result<TransferMatrix> {
    check_k(k)?;
    let w = principal_sqrt_upper(1.0 - spec.z / (k * k));
    let chi = spec.alpha * k;
    let (lower, upper, off) = if w.norm() < SMALL_W {
        let arg = 2.0 * chi * w;
        (
            f_over_4w_regular(w, -chi),
            f_over_4w_regular(w, chi),
            I * (w * w - 1.0) * chi * sinc(arg),
        )
    } else {
        (
            f_func(w, -chi) / (4.0 * w),
            f_func(w, chi) / (4.0 * w),
            I * (w * w - 1.0) * (2.0 * chi * w).sin() / (2.0 * w),
        )
    };
    let e = (2.0 * I * chi).exp();
    Ok(TransferMatrix {
        m11: lower / e,
        m12: off,
        m21: -off,
        m22: e * upper,
    })
}

pub fn amplitudes(m: &TransferMatrix) -> Result<ScatteringAmplitudes> {
    if m.m22.norm() == 0.0 {
        return Err(Error::ExactSingularity);
    }
    Ok(ScatteringAmplitudes {
        t: 1.0 / m.m22,
        r_left: -m.m21 / m.m22,
        r_right: m.m12 / m.m22,
    })
}

/// Scale-free size of `f(w, αk)`; values below `1e-9` certify a spectral
/// singularity at working precision.
pub fn m22_residual(spec: &BarrierSpec, k: f64) -> Result<f64> {
    check_k(k)?;
    let w = principal_sqrt_upper(1.0 - spec.z / (k * k));
    let f = f_func(w, spec.alpha * k);
    Ok(f.norm() / ((1.0 + w).norm_sqr() + (1.0 - w).norm_sqr()))
}

/// Transfer matrix from continuity of `ψ` and `ψ'` at `x = ±alpha`.
pub fn oracle_transfer_matrix(spec: &BarrierSpec, k: f64) -> Result<TransferMatrix> {
    check_k(k)?;
    let kin = k * principal_sqrt_upper(1.0 - spec.z / (k * k));
    if kin.norm() == 0.0 {
        return Err(Error::Degenerate("interior wave number vanishes".into()));
    }
    let a = spec.alpha;
    let ik = I * k;
    let ikin = I * kin;
    let ex = |c: Complex64, x: f64| (c * x).exp();

    // Unknowns (C, D, A+, B+):
    //   C e^{ik'x} + D e^{-ik'x}        on |x| < a
    //   A+ e^{ikx} + B+ e^{-ikx}         on x > a
    let zero = Complex64::new(0.0, 0.0);
    let mat = Matrix4::new(
        ex(ikin, -a), ex(-ikin, -a), zero, zero,
        ikin * ex(ikin, -a), -ikin * ex(-ikin, -a), zero, zero,
        ex(ikin, a), ex(-ikin, a), -ex(ik, a), -ex(-ik, a),
        ikin * ex(ikin, a), -ikin * ex(-ikin, a), -ik * ex(ik, a), ik * ex(-ik, a),
    );
    let lu = mat.lu();

    let mut columns = [(zero, zero); 2];
    for (col, (a_minus, b_minus)) in [(1.0, 0.0), (0.0, 1.0)].into_iter().enumerate() {
        let a_minus = Complex64::new(a_minus, 0.0);
        let b_minus = Complex64::new(b_minus, 0.0);
        let rhs = Vector4::new(
            a_minus * ex(ik, -a) + b_minus * ex(-ik, -a),
            ik * (a_minus * ex(ik, -a) - b_minus * ex(-ik, -a)),
            zero,
            zero,
        );
        let sol = lu
            .solve(&rhs)
            .ok_or_else(|| Error::Degenerate("singular matching system".into()))?;
        columns[col] = (sol[2], sol[3]);
    }
    Ok(TransferMatrix {
        m11: columns[0].0,
        m21: columns[0].1,
        m12: columns[1].0,
        m22: columns[1].1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Incidence {
    Left,
    Right,
}

/// Value and derivative of the scattering solution at each position in `xs`.
///
/// Left incidence: `e^{ikx} + R e^{-ikx}` on the left, `T e^{ikx}` on the right.
/// Right incidence mirrors it.
pub fn wavefunction_with_derivative(
    spec: &BarrierSpec,
    k: f64,
    which: Incidence,
    xs: &[f64],
) -> Result<Vec<(Complex64, Complex64)>> {
    let m = transfer_matrix(spec, k)?;
    let amp = amplitudes(&m)?;
    let kin = k * principal_sqrt_upper(1.0 - spec.z / (k * k));
    let a = spec.alpha;
    let ik = I * k;
    let plane = |c_plus: Complex64, c_minus: Complex64, x: f64| {
        let ep = (ik * x).exp();
        let em = (-ik * x).exp();
        (c_plus * ep + c_minus * em, ik * (c_plus * ep - c_minus * em))
    };
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let (left, right) = match which {
        Incidence::Left => ((one, amp.r_left), (amp.t, zero)),
        Incidence::Right => ((zero, amp.t), (amp.r_right, one)),
    };
    // Inside, propagate from the transmitted side with a cos/sinc basis, which
    // stays regular when the interior wave number goes to zero.
    let (anchor, (psi_b, dpsi_b)) = match which {
        Incidence::Left => (a, plane(right.0, right.1, a)),
        Incidence::Right => (-a, plane(left.0, left.1, -a)),
    };
    let inside = |x: f64| {
        let d = x - anchor;
        let arg = kin * d;
        let psi = psi_b * arg.cos() + dpsi_b * d * sinc(arg);
        let dpsi = -psi_b * kin * kin * d * sinc(arg) + dpsi_b * arg.cos();
        (psi, dpsi)
    };
    Ok(xs
        .iter()
        .map(|&x| {
            if x <= -a {
                plane(left.0, left.1, x)
            } else if x >= a {
                plane(right.0, right.1, x)
            } else {
                inside(x)
            }
        })
        .collect())
}

pub fn wavefunction_profile(
    spec: &BarrierSpec,
    k: f64,
    which: Incidence,
    xs: &[f64],
) -> Result<Vec<Complex64>> {
    Ok(wavefunction_with_derivative(spec, k, which, xs)?
        .into_iter()
        .map(|(psi, _)| psi)
        .collect())
}
