//! Command-line front end.
//!
//! Exit codes: `0` success with results, `2` valid run without solutions,
//! `3` invalid input or configuration.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use crate::barrier::{amplitudes, m22_residual, transfer_matrix, BarrierSpec};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::format::sci;
use crate::locus::{trace_curve, BranchLabel};
use crate::tables::{pretty_length_nm, reference_rows, reproduce, TABLE_REL_TOL};
use crate::units::parse_length_nm;
use crate::waveguide::{find_singularities, gain_scan, WaveguideGeometry, LOG10_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_SOLUTION: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ssing", version, about = "Spectral singularities of the complex barrier and resonating waveguide designs")]
pub struct Cli {
    /// TOML run configuration (gain medium, guide height, numerics).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Suppress informational messages on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transfer matrix and amplitudes of a single barrier.
    Transfer {
        /// Coupling in nm⁻², e.g. `1+0.5i`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Half-length; bare numbers are nm.
        #[arg(long)]
        alpha: String,
        /// Wave number in nm⁻¹.
        #[arg(long)]
        k: f64,
    },
    /// Certified points of the curve (n, -) in the rho-sigma plane, as CSV.
    Curve {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
        rho_min: f64,
        #[arg(long, default_value_t = 0.99, allow_hyphen_values = true)]
        rho_max: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Waveguide designs (frequency, gain length) for branch n.
    Design {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        ell: Option<u32>,
        /// Overrides the configured 2β/m, e.g. `1mm`.
        #[arg(long)]
        two_beta_over_m: Option<String>,
    },
    /// log10(|T|²+|R|²) around a design frequency, as CSV.
    Scan {
        #[arg(long, default_value_t = 10_000)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        ell: u32,
        /// Half-width of the omega/omega_s window.
        #[arg(long, default_value_t = 5e-4)]
        span: f64,
        #[arg(long, default_value_t = 2001)]
        points: usize,
        #[arg(long)]
        two_beta_over_m: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute a reference table and report deviations.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
    },
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i` (spaces ignored).
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::invalid(format!("cannot parse complex number '{text}'"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    quiet: bool,
}

impl Ctx<'_> {
    fn info(&mut self, msg: &str) {
        if !self.quiet {
            let _ = writeln!(self.err, "{msg}");
        }
    }
}

/// Runs the CLI with explicit arguments and streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = write!(err, "{}", e.render());
            if !e.use_stderr() {
                let _ = write!(out, "{}", e.render());
            }
            return code;
        }
    };
    let mut ctx = Ctx { out, err, quiet: cli.quiet };
    match dispatch(&cli, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn load_config(cli: &Cli, override_height: Option<&str>) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    cfg.apply_env()?;
    if let Some(h) = override_height {
        let mut geom = WaveguideGeometry::from_two_beta_over_m(parse_length_nm(h)?)?;
        geom.gamma = cfg.geometry.gamma;
        cfg.geometry = geom;
    }
    Ok(cfg)
}

fn open_out<'a>(path: &Option<PathBuf>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    match path {
        Some(p) => Ok(Box::new(BufWriter::new(create(p)?))),
        None => Ok(Box::new(stdout)),
    }
}

fn create(p: &Path) -> Result<File> {
    File::create(p).map_err(|e| Error::invalid(format!("cannot write {}: {e}", p.display())))
}

fn io_err(e: io::Error) -> Error {
    Error::invalid(format!("write failed: {e}"))
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> Result<i32> {
    match &cli.command {
        Command::Transfer { z, alpha, k } => cmd_transfer(ctx, z, alpha, *k),
        Command::Curve { n, rho_min, rho_max, samples, out } => {
            cmd_curve(ctx, *n, *rho_min, *rho_max, *samples, out)
        }
        Command::Design { n, ell, two_beta_over_m } => {
            let cfg = load_config(cli, two_beta_over_m.as_deref())?;
            cmd_design(ctx, &cfg, *n, *ell)
        }
        Command::Scan { n, ell, span, points, two_beta_over_m, out } => {
            let cfg = load_config(cli, two_beta_over_m.as_deref())?;
            cmd_scan(ctx, &cfg, *n, *ell, *span, *points, out)
        }
        Command::Tables { which } => {
            let cfg = load_config(cli, None)?;
            cmd_tables(ctx, &cfg, *which)
        }
    }
}

fn cmd_transfer(ctx: &mut Ctx, z: &str, alpha: &str, k: f64) -> Result<i32> {
    let spec = BarrierSpec::new(parse_length_nm(alpha)?, parse_complex(z)?)?;
    let m = transfer_matrix(&spec, k)?;
    let residual = m22_residual(&spec, k)?;
    let mut lines: Vec<(String, f64)> = Vec::new();
    let mut push_c = |name: &str, c: Complex64| {
        lines.push((format!("{name}_re"), c.re));
        lines.push((format!("{name}_im"), c.im));
    };
    push_c("m11", m.m11);
    push_c("m12", m.m12);
    push_c("m21", m.m21);
    push_c("m22", m.m22);
    push_c("det", m.det());
    match amplitudes(&m) {
        Ok(amp) => {
            push_c("t", amp.t);
            push_c("r", amp.r_left);
            lines.push(("T2_plus_R2".into(), amp.total_intensity()));
        }
        Err(Error::ExactSingularity) => {
            push_c("t", Complex64::new(f64::INFINITY, f64::INFINITY));
            push_c("r", Complex64::new(f64::INFINITY, f64::INFINITY));
            lines.push(("T2_plus_R2".into(), f64::INFINITY));
        }
        Err(e) => return Err(e),
    }
    lines.push(("residual".into(), residual));
    for (key, value) in lines {
        writeln!(ctx.out, "{key}={}", sci(value)).map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn cmd_curve(
    ctx: &mut Ctx,
    n: u32,
    rho_min: f64,
    rho_max: f64,
    samples: usize,
    out: &Option<PathBuf>,
) -> Result<i32> {
    let branch = BranchLabel::minus(n)?;
    let points = trace_curve(branch, rho_min, rho_max, samples)?;
    ctx.info(&format!("{} certified points on branch n={n}", points.len()));
    let mut w = open_out(out, ctx.out)?;
    writeln!(w, "rho,sigma,alpha_k,residual").map_err(io_err)?;
    for p in &points {
        writeln!(w, "{},{},{},{}", sci(p.rho), sci(p.sigma), sci(p.alpha_k), sci(p.residual)).map_err(io_err)?;
    }
    w.flush().map_err(io_err)?;
    Ok(EXIT_OK)
}

fn cmd_design(ctx: &mut Ctx, cfg: &RunConfig, n: u32, ell: Option<u32>) -> Result<i32> {
    let sols = find_singularities(&cfg.medium, &cfg.geometry, n, &cfg.search)?;
    let sols: Vec<_> = sols.into_iter().filter(|s| ell.is_none_or(|l| s.ell == l)).collect();
    if sols.is_empty() {
        ctx.info("no spectral singularities found");
        return Ok(EXIT_NO_SOLUTION);
    }
    for s in &sols {
        writeln!(
            ctx.out,
            "n={} ell={} omega_eV={} lambda_nm={} two_alpha_mm={} sqrt_eps_re={} sqrt_eps_im={} residual={}",
            s.branch.n,
            s.ell,
            sci(s.omega),
            sci(s.lambda),
            sci(s.two_alpha_mm()),
            sci(s.refractive_index.re),
            sci(s.refractive_index.im),
            sci(s.residual),
        )
        .map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

/// `points` ratios evenly spaced over `1 ± span`; odd counts include 1 exactly.
pub fn ratio_grid(span: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![1.0];
    }
    let half = (points - 1) as f64 / 2.0;
    (0..points).map(|i| 1.0 + span * (i as f64 - half) / half).collect()
}

fn cmd_scan(
    ctx: &mut Ctx,
    cfg: &RunConfig,
    n: u32,
    ell: u32,
    span: f64,
    points: usize,
    out: &Option<PathBuf>,
) -> Result<i32> {
    if !(span > 0.0 && span < 1.0) || points == 0 {
        return Err(Error::invalid("need 0 < span < 1 and at least one point"));
    }
    let sols = find_singularities(&cfg.medium, &cfg.geometry, n, &cfg.search)?;
    let Some(sol) = sols.into_iter().find(|s| s.ell == ell) else {
        ctx.info(&format!("no design with n={n} ell={ell}"));
        return Ok(EXIT_NO_SOLUTION);
    };
    let scan = gain_scan(&sol, &cfg.medium, &cfg.geometry, &ratio_grid(span, points))?;
    let mut w = open_out(out, ctx.out)?;
    writeln!(
        w,
        "# n={} ell={} omega_s_eV={} two_alpha_mm={} two_beta_over_m_nm={} lambda_nm={}",
        n,
        ell,
        sci(sol.omega),
        sci(sol.two_alpha_mm()),
        sci(cfg.geometry.two_beta_over_m()),
        sci(sol.lambda),
    )
    .map_err(io_err)?;
    writeln!(w, "# log10 values are capped at {LOG10_CAP} where |M22| < 1e-300").map_err(io_err)?;
    writeln!(w, "omega_ratio,log10_T2_plus_R2").map_err(io_err)?;
    for (ratio, value) in scan {
        writeln!(w, "{},{}", sci(ratio), sci(value)).map_err(io_err)?;
    }
    w.flush().map_err(io_err)?;
    Ok(EXIT_OK)
}

fn cmd_tables(ctx: &mut Ctx, cfg: &RunConfig, which: u8) -> Result<i32> {
    let rows = reference_rows(which).ok_or_else(|| Error::invalid("table must be 1 or 2"))?;
    let cmp = reproduce(rows, &cfg.medium, &cfg.search)?;
    writeln!(
        ctx.out,
        "{:>10} {:>6} {:>3} | {:>14} {:>14} {:>9} | {:>14} {:>14} {:>9} | {:>22} {:>22} {:>9} | flag",
        "2b/m", "n", "ell", "lambda", "ref", "dev", "2alpha", "ref", "dev", "sqrt_eps", "ref", "dev"
    )
    .map_err(io_err)?;
    let mut flagged = 0;
    for c in &cmp {
        let r = &c.reference;
        let d = c.deviations();
        let (lam, alpha, eps) = match &c.computed {
            Some(s) => (
                pretty_length_nm(s.lambda),
                pretty_length_nm(s.two_alpha_mm() * 1e6),
                format!("{:.5}{:+.4e}i", s.refractive_index.re, s.refractive_index.im),
            ),
            None => ("-".into(), "-".into(), "-".into()),
        };
        let ok = c.agrees();
        if !ok {
            flagged += 1;
        }
        writeln!(
            ctx.out,
            "{:>10} {:>6} {:>3} | {:>14} {:>14} {:>9.2e} | {:>14} {:>14} {:>9.2e} | {:>22} {:>22} {:>9.2e} | {}",
            pretty_length_nm(r.two_beta_over_m_nm),
            r.n,
            r.ell,
            lam,
            pretty_length_nm(r.lambda_nm),
            d[0],
            alpha,
            pretty_length_nm(r.two_alpha_mm * 1e6),
            d[1],
            eps,
            format!("{:.5}{:+.4e}i", r.sqrt_eps.re, r.sqrt_eps.im),
            d[2].max(d[3]),
            if ok { "ok" } else { "FLAG" },
        )
        .map_err(io_err)?;
    }
    ctx.info(&format!(
        "{} of {} rows within relative {TABLE_REL_TOL:e}",
        cmp.len() - flagged,
        cmp.len()
    ));
    Ok(EXIT_OK)
}
