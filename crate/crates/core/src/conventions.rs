//! Unit system and the square-root branch used throughout the crate.
//!
//! Energies are in eV (with ħ = 1), lengths in nm and wave numbers in nm⁻¹.
//! The single bridge between them is [`HBAR_C`].

use num_complex::Complex64;

use crate::error::{Error, Result};

/// ħc in eV·nm.
pub const HBAR_C: f64 = 197.3269804;

/// Square root with argument in `[0, π)`.
///
/// This differs from the standard principal branch (argument in `(-π/2, π/2]`)
/// for inputs in the lower half plane, where the result is negated so that its
/// imaginary part is non-negative. The barrier transfer matrix relies on it.
pub fn principal_sqrt_upper(u: Complex64) -> Complex64 {
    let s = u.sqrt();
    if s.im > 0.0 || (s.im == 0.0 && s.re >= 0.0) {
        s
    } else {
        -s
    }
}

/// Converts an energy `ħω` in eV to the vacuum wave number `ω/c` in nm⁻¹.
pub fn ev_to_inverse_nm(omega_ev: f64) -> Result<f64> {
    if !(omega_ev >= 0.0) {
        return Err(Error::invalid(format!(
            "energy must be non-negative, got {omega_ev}"
        )));
    }
    Ok(omega_ev / HBAR_C)
}

/// Vacuum wavelength in nm for a photon energy in eV.
pub fn wavelength_nm(omega_ev: f64) -> f64 {
    2.0 * std::f64::consts::PI * HBAR_C / omega_ev
}
