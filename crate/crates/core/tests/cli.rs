use std::io::Write;

use ssing::cli::{run, EXIT_INVALID, EXIT_NO_SOLUTION, EXIT_OK};

fn ssing(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("ssing").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn field(line: &str, key: &str) -> f64 {
    line.split_whitespace()
        .find_map(|kv| kv.strip_prefix(key)?.strip_prefix('='))
        .unwrap_or_else(|| panic!("no {key} in {line}"))
        .parse()
        .unwrap()
}

fn record(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
        .unwrap_or_else(|| panic!("no {key}"))
        .parse()
        .unwrap()
}

#[test]
fn transfer_of_nothing_is_identity() {
    let (code, out, _) = ssing(&["transfer", "--z", "0+0i", "--alpha", "1", "--k", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(record(&out, "m11_re"), 1.0);
    assert_eq!(record(&out, "m12_re"), 0.0);
    assert_eq!(record(&out, "m22_im"), 0.0);
    assert_eq!(record(&out, "det_re"), 1.0);
    assert_eq!(record(&out, "T2_plus_R2"), 1.0);
}

#[test]
fn transfer_of_real_barrier_conserves_flux() {
    let (code, out, _) = ssing(&["transfer", "--z", "0.7", "--alpha", "2", "--k", "0.4"]);
    assert_eq!(code, EXIT_OK);
    assert!((record(&out, "T2_plus_R2") - 1.0).abs() < 1e-12);
    assert!((record(&out, "det_re") - 1.0).abs() < 1e-12);
    assert!(record(&out, "residual") > 1e-3);
}

#[test]
fn transfer_rejects_bad_input() {
    assert_eq!(ssing(&["transfer", "--z", "abc", "--alpha", "1", "--k", "1"]).0, EXIT_INVALID);
    assert_eq!(ssing(&["transfer", "--z", "1", "--alpha", "-1", "--k", "1"]).0, EXIT_INVALID);
    assert_eq!(ssing(&["transfer", "--z", "1", "--alpha", "1", "--k", "0"]).0, EXIT_INVALID);
    assert_eq!(ssing(&["frobnicate"]).0, EXIT_INVALID);
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = ssing(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("design"));
}

#[test]
fn curve_csv() {
    let (code, out, _) = ssing(&["curve", "--n", "1", "--rho-min", "0.67", "--rho-max", "0.99", "--samples", "40"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("rho,sigma,alpha_k,residual"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[1] > 0.0 && r[2] > 0.0 && r[3] < 1e-9));
    assert!(rows.windows(2).all(|w| w[0][0] >= w[1][0]));
}

#[test]
fn curve_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c2.csv");
    let (code, out, _) = ssing(&["curve", "--n", "2", "--samples", "20", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.lines().count() > 1);
}

#[test]
fn curve_rejects_bad_branch() {
    assert_eq!(ssing(&["curve", "--n", "0"]).0, EXIT_INVALID);
    assert_eq!(ssing(&["curve", "--n", "1", "--rho-max", "1.5"]).0, EXIT_INVALID);
}

#[test]
fn design_finds_the_showcase() {
    let (code, out, _) = ssing(&["--quiet", "design", "--n", "10000", "--ell", "2"]);
    assert_eq!(code, EXIT_OK);
    let line = out.lines().next().unwrap();
    assert!((field(line, "lambda_nm") - 575.20).abs() < 0.01);
    assert!((field(line, "two_alpha_mm") - 2.8786).abs() < 1e-4);
    assert!((field(line, "sqrt_eps_im") + 2.4333e-4).abs() < 1e-8);
    assert!(field(line, "residual") < 1e-9);
}

#[test]
fn design_height_override() {
    let (code, out, _) = ssing(&["--quiet", "design", "--n", "10000", "--ell", "2", "--two-beta-over-m", "1um"]);
    assert_eq!(code, EXIT_OK);
    assert!((field(out.lines().next().unwrap(), "lambda_nm") - 614.03).abs() < 0.01);
}

#[test]
fn design_without_gain_reports_no_solution() {
    let mut cfg = tempfile::NamedTempFile::new().unwrap();
    writeln!(cfg, "omega_p_sq_eV2 = 0.04").unwrap();
    let (code, out, _) = ssing(&["--config", cfg.path().to_str().unwrap(), "design", "--n", "10000"]);
    assert_eq!(code, EXIT_NO_SOLUTION);
    assert!(out.is_empty());
}

#[test]
fn design_rejects_bad_config() {
    let mut cfg = tempfile::NamedTempFile::new().unwrap();
    writeln!(cfg, "omega0 = 5").unwrap();
    let (code, _, err) = ssing(&["--config", cfg.path().to_str().unwrap(), "design", "--n", "3"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("error"));
}

#[test]
fn scan_is_deterministic_and_peaks_at_center() {
    let args = ["--quiet", "scan", "--points", "201", "--span", "1e-4"];
    let (code, first, _) = ssing(&args);
    assert_eq!(code, EXIT_OK);
    let (_, second, _) = ssing(&args);
    assert_eq!(first, second);

    let lines: Vec<&str> = first.lines().collect();
    assert!(lines[0].starts_with("# n=10000 ell=2"));
    assert!(lines[1].starts_with('#'));
    assert_eq!(lines[2], "omega_ratio,log10_T2_plus_R2");
    let rows: Vec<(f64, f64)> = lines[3..]
        .iter()
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 201);
    let (ratio, peak) = rows.iter().copied().fold((0.0, f64::NEG_INFINITY), |m, r| if r.1 > m.1 { r } else { m });
    assert_eq!(ratio, 1.0);
    assert!(peak >= 15.0);
    assert!(rows.iter().all(|r| r.1.is_finite()));
}

#[test]
fn scan_without_design_reports_no_solution() {
    assert_eq!(ssing(&["--quiet", "scan", "--n", "10000", "--ell", "9"]).0, EXIT_NO_SOLUTION);
    assert_eq!(ssing(&["scan", "--span", "2"]).0, EXIT_INVALID);
}

#[test]
fn tables_all_ok() {
    for which in ["1", "2"] {
        let (code, out, _) = ssing(&["--quiet", "tables", "--which", which]);
        assert_eq!(code, EXIT_OK);
        assert!(!out.contains("FLAG"), "{out}");
    }
    assert_eq!(ssing(&["tables", "--which", "3"]).0, EXIT_INVALID);
}
