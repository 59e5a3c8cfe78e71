//! Sign-change bracketing and bisection.

/// Sign of a value for bracketing purposes; `None` for NaN.
fn sign(v: f64) -> Option<bool> {
    if v.is_nan() {
        None
    } else {
        Some(v > 0.0)
    }
}

/// Index pairs `(i, i + 1)` of consecutive samples with opposite, defined signs.
pub fn sign_changes(values: &[f64]) -> Vec<usize> {
    values
        .windows(2)
        .enumerate()
        .filter_map(|(i, w)| match (sign(w[0]), sign(w[1])) {
            (Some(a), Some(b)) if a != b => Some(i),
            _ => None,
        })
        .collect()
}

/// `count` points from `lo` to `hi` (both included) spaced evenly in `log x`.
pub fn geometric_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && count >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| match i {
            0 => lo,
            i if i + 1 == count => hi,
            i => (a + (b - a) * i as f64 / (count - 1) as f64).exp(),
        })
        .collect()
}

pub fn uniform_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(hi > lo && count >= 2);
    (0..count)
        .map(|i| {
            if i + 1 == count {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (count - 1) as f64
            }
        })
        .collect()
}

/// Bisects a sign change of `f` on `[a, b]` until `(b - a) <= rel_tol * |mid|`
/// or the interval stops shrinking. `fa` is `f(a)`.
///
/// NaN evaluations inside the bracket are treated as having the sign of `fa`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, fa: f64, mut b: f64, rel_tol: f64) -> f64 {
    let left_sign = fa > 0.0;
    for _ in 0..400 {
        let mid = 0.5 * (a + b);
        if mid <= a.min(b) || mid >= a.max(b) || (b - a).abs() <= rel_tol * mid.abs() {
            break;
        }
        let fm = f(mid);
        if fm.is_nan() || (fm > 0.0) == left_sign {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
