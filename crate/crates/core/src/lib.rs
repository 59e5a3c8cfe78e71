//! Spectral singularities of the complex barrier potential and their use in
//! designing resonating slab waveguides.
//!
//! - [`barrier`]: transfer matrix, amplitudes and the `M22` residual.
//! - [`locus`]: the real reduction `F(rho, y) = 0` and certified curve tracing.
//! - [`waveguide`]: Lorentz gain medium, the physical curve and design solves.
//! - [`tables`]: reference designs and their recomputation.
//! - [`cli`]: the `ssing` command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // negated comparisons reject NaN on purpose

pub mod barrier;
pub mod cli;
pub mod config;
pub mod conventions;
pub mod error;
pub mod format;
pub mod locus;
pub mod roots;
pub mod tables;
pub mod units;
pub mod waveguide;

pub use error::{Error, Result};
