//! Run configuration read from a flat TOML file.
//!
//! ```toml
//! omega0_eV = 5.0
//! omega_p_sq_eV2 = -0.04
//! delta_eV = 1.25
//! two_beta_over_m = "1cm"
//!
//! [numerics]
//! uniform_points = 20000
//! ```
//!
//! Every key is optional. The medium defaults to `ħω₀ = 5 eV`,
//! `ħ²ω_p² = -0.04 eV²`, `ħδ = 1.25 eV` and the guide to `2β/m = 1 cm`, `m = 1`.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::units::parse_length_nm;
use crate::waveguide::{GainMedium, SearchOptions, WaveguideGeometry};

/// Environment variable overriding both search grid sizes.
pub const GRID_ENV: &str = "SSING_GRID_POINTS";

pub const DEFAULT_TWO_BETA_OVER_M_NM: f64 = 1e7;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Length {
    Nm(f64),
    Text(String),
}

impl Length {
    fn nm(&self) -> Result<f64> {
        match self {
            Length::Nm(v) => Ok(*v),
            Length::Text(s) => parse_length_nm(s),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNumerics {
    uniform_points: Option<usize>,
    log_points: Option<usize>,
    #[serde(rename = "window_min_eV")]
    window_min_ev: Option<f64>,
    #[serde(rename = "window_max_eV")]
    window_max_ev: Option<f64>,
    rel_tol: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(rename = "omega0_eV")]
    omega0_ev: Option<f64>,
    #[serde(rename = "omega_p_sq_eV2")]
    omega_p_sq_ev2: Option<f64>,
    #[serde(rename = "delta_eV")]
    delta_ev: Option<f64>,
    two_beta_over_m: Option<Length>,
    m: Option<u32>,
    half_width: Option<Length>,
    #[serde(default)]
    numerics: RawNumerics,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub medium: GainMedium,
    pub geometry: WaveguideGeometry,
    pub search: SearchOptions,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            medium: GainMedium::default(),
            geometry: WaveguideGeometry::from_two_beta_over_m(DEFAULT_TWO_BETA_OVER_M_NM)
                .expect("default geometry is valid"),
            search: SearchOptions::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let defaults = GainMedium::default();
        let medium = GainMedium::new(
            raw.omega0_ev.unwrap_or(defaults.omega0),
            raw.omega_p_sq_ev2.unwrap_or(defaults.omega_p_sq),
            raw.delta_ev.unwrap_or(defaults.delta),
        )
        .map_err(|e| Error::Config(e.to_string()))?;

        let m = raw.m.unwrap_or(1);
        let two_beta_over_m = match &raw.two_beta_over_m {
            Some(len) => len.nm()?,
            None => DEFAULT_TWO_BETA_OVER_M_NM,
        };
        let mut geometry = WaveguideGeometry::new(two_beta_over_m * m as f64 / 2.0, m)
            .map_err(|e| Error::Config(e.to_string()))?;
        geometry.gamma = raw.half_width.as_ref().map(Length::nm).transpose()?;

        let mut search = SearchOptions::default();
        let n = &raw.numerics;
        if let Some(p) = n.uniform_points {
            search.uniform_points = p;
        }
        if let Some(p) = n.log_points {
            search.log_points = p;
        }
        if let Some(t) = n.rel_tol {
            search.rel_tol = t;
        }
        if n.window_min_ev.is_some() || n.window_max_ev.is_some() {
            let (lo, hi) = search.resolve_window(&medium, &geometry);
            search.window = Some((n.window_min_ev.unwrap_or(lo), n.window_max_ev.unwrap_or(hi)));
        }
        if search.uniform_points < 2 {
            return Err(Error::Config("uniform_points must be at least 2".into()));
        }
        Ok(Self { medium, geometry, search })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Applies [`GRID_ENV`] if it is set.
    pub fn apply_env(&mut self) -> Result<()> {
        if let Ok(v) = std::env::var(GRID_ENV) {
            let points: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{GRID_ENV} must be an integer, got '{v}'")))?;
            if points < 2 {
                return Err(Error::Config(format!("{GRID_ENV} must be at least 2")));
            }
            self.search.uniform_points = points;
            self.search.log_points = points;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let cfg = RunConfig::from_toml_str("").unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.medium.omega_p_sq, -0.04);
        assert_eq!(cfg.geometry.two_beta_over_m(), 1e7);
    }

    #[test]
    fn parses_units_and_overrides() {
        let cfg = RunConfig::from_toml_str(
            r#"
            omega_p_sq_eV2 = 0.04
            two_beta_over_m = "1um"
            m = 2
            half_width = 5e5

            [numerics]
            uniform_points = 500
            window_max_eV = 20.0
            "#,
        )
        .unwrap();
        assert_eq!(cfg.medium.omega_p_sq, 0.04);
        assert_eq!(cfg.medium.omega0, 5.0);
        assert_eq!(cfg.geometry.m, 2);
        assert_eq!(cfg.geometry.beta, 1000.0);
        assert_eq!(cfg.geometry.two_beta_over_m(), 1000.0);
        assert_eq!(cfg.geometry.gamma, Some(5e5));
        assert_eq!(cfg.search.uniform_points, 500);
        assert_eq!(cfg.search.window.unwrap().1, 20.0);
    }

    #[test]
    fn rejects_bad_config() {
        assert!(RunConfig::from_toml_str("bogus = 1").is_err());
        assert!(RunConfig::from_toml_str("delta_eV = -1.0").is_err());
        assert!(RunConfig::from_toml_str("two_beta_over_m = \"3 parsecs\"").is_err());
        assert!(RunConfig::from_toml_str("omega0_eV = \"five\"").is_err());
    }
}
