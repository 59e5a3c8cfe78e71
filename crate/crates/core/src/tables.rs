//! Published reference designs and their recomputation.
//!
//! Both tables use the default gain medium. The first fixes `n = 10000` and
//! varies the guide height; the second fixes `2β/m = 1 cm` and varies `n`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::waveguide::{find_singularities, GainMedium, SearchOptions, SingularitySolution, WaveguideGeometry};

/// Agreement required between a recomputed and a published quantity.
/// Five significant figures, expressed as a relative deviation.
pub const TABLE_REL_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    pub two_beta_over_m_nm: f64,
    pub n: u32,
    pub ell: u32,
    pub lambda_nm: f64,
    pub two_alpha_mm: f64,
    pub sqrt_eps: Complex64,
}

const fn row(two_beta_over_m_nm: f64, n: u32, ell: u32, lambda_nm: f64, two_alpha_mm: f64, re: f64, im: f64) -> ReferenceRow {
    ReferenceRow { two_beta_over_m_nm, n, ell, lambda_nm, two_alpha_mm, sqrt_eps: Complex64::new(re, im) }
}

const UM: f64 = 1e3;
const MM: f64 = 1e6;
const CM: f64 = 1e7;

pub const TABLE_1: [ReferenceRow; 9] = [
    row(UM, 10_000, 1, 1679.8, 15.517, 0.99919, -6.1408e-5),
    row(UM, 10_000, 2, 614.03, 3.2291, 0.99910, -2.1814e-4),
    row(UM, 10_000, 3, 162.61, 0.81531, 1.00045, -2.6078e-4),
    row(MM, 10_000, 1, 1.9974e6, 307.845e3, 0.99920, -4.9699e-8),
    row(MM, 10_000, 2, 575.20, 2.8786, 0.99908, -2.4333e-4),
    row(MM, 10_000, 3, 162.85, 0.81379, 1.00045, -2.6259e-4),
    row(CM, 10_000, 1, 1.9982e7, 6.7894e6, 0.99920, -4.968e-9),
    row(CM, 10_000, 2, 575.20, 2.8786, 0.99908, -2.4333e-4),
    row(CM, 10_000, 3, 162.84, 0.81379, 1.00045, -2.6259e-4),
];

pub const TABLE_2: [ReferenceRow; 8] = [
    row(CM, 2000, 2, 306.59, 0.30685, 0.99902, -1.1437e-3),
    row(CM, 3000, 2, 347.47, 0.52173, 0.99893, -7.763e-4),
    row(CM, 4000, 2, 382.28, 0.76534, 0.99895, -5.8934e-4),
    row(CM, 5000, 2, 415.09, 1.03877, 0.99897, -4.757e-4),
    row(CM, 2000, 3, 220.78, 0.22059, 1.00055, -1.1701e-3),
    row(CM, 3000, 3, 203.54, 0.30504, 1.00064, -8.043e-4),
    row(CM, 4000, 3, 193.10, 0.38589, 1.00062, -6.1592e-4),
    row(CM, 5000, 3, 185.45, 0.46327, 1.00059, -5.006e-4),
];

pub fn reference_rows(which: u8) -> Option<&'static [ReferenceRow]> {
    match which {
        1 => Some(&TABLE_1),
        2 => Some(&TABLE_2),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowComparison {
    pub reference: ReferenceRow,
    pub computed: Option<SingularitySolution>,
}

impl RowComparison {
    /// Relative deviations of `(lambda, 2 alpha, Re sqrt eps, Im sqrt eps)`;
    /// infinite when the design was not found.
    pub fn deviations(&self) -> [f64; 4] {
        let Some(s) = &self.computed else {
            return [f64::INFINITY; 4];
        };
        let rel = |got: f64, want: f64| ((got - want) / want).abs();
        let r = &self.reference;
        [
            rel(s.lambda, r.lambda_nm),
            rel(s.two_alpha_mm(), r.two_alpha_mm),
            rel(s.refractive_index.re, r.sqrt_eps.re),
            rel(s.refractive_index.im, r.sqrt_eps.im),
        ]
    }

    pub fn max_deviation(&self) -> f64 {
        self.deviations().into_iter().fold(0.0, f64::max)
    }

    pub fn agrees(&self) -> bool {
        self.max_deviation() < TABLE_REL_TOL
    }
}

/// Recomputes each reference row, solving every `(geometry, n)` pair once.
pub fn reproduce(rows: &[ReferenceRow], medium: &GainMedium, opts: &SearchOptions) -> Result<Vec<RowComparison>> {
    let mut keys: Vec<(f64, u32)> = Vec::new();
    for r in rows {
        if !keys.contains(&(r.two_beta_over_m_nm, r.n)) {
            keys.push((r.two_beta_over_m_nm, r.n));
        }
    }
    let solved: Vec<((f64, u32), Vec<SingularitySolution>)> = keys
        .par_iter()
        .map(|&(h, n)| {
            let geom = WaveguideGeometry::from_two_beta_over_m(h)?;
            Ok(((h, n), find_singularities(medium, &geom, n, opts)?))
        })
        .collect::<Result<_>>()?;
    Ok(rows
        .iter()
        .map(|r| {
            let computed = solved
                .iter()
                .find(|(key, _)| *key == (r.two_beta_over_m_nm, r.n))
                .and_then(|(_, sols)| sols.iter().find(|s| s.ell == r.ell))
                .copied();
            RowComparison { reference: *r, computed }
        })
        .collect())
}

/// Human-readable length for table output.
pub fn pretty_length_nm(nm: f64) -> String {
    let (value, unit) = match nm {
        x if x >= 1e12 => (x / 1e12, "km"),
        x if x >= 1e9 => (x / 1e9, "m"),
        x if x >= 1e7 => (x / 1e7, "cm"),
        x if x >= 1e6 => (x / 1e6, "mm"),
        x if x >= 1e3 => (x / 1e3, "um"),
        x => (x, "nm"),
    };
    format!("{value:.5} {unit}")
}
