//! Lengths with unit suffixes, normalised to nm.

use crate::error::{Error, Result};

/// Parses `"1cm"`, `"2.5 mm"`, `"1e3"` (bare numbers are nm). Accepts `um`
/// and `μm` for micrometres.
pub fn parse_length_nm(text: &str) -> Result<f64> {
    const UNITS: [(&str, f64); 8] = [
        ("km", 1e12),
        ("mm", 1e6),
        ("cm", 1e7),
        ("um", 1e3),
        ("μm", 1e3),
        ("µm", 1e3),
        ("nm", 1.0),
        ("m", 1e9),
    ];
    let t = text.trim();
    let (num, scale) = UNITS
        .iter()
        .find_map(|&(suffix, scale)| t.strip_suffix(suffix).map(|rest| (rest, scale)))
        .unwrap_or((t, 1.0));
    let value: f64 = num
        .trim()
        .parse()
        .map_err(|_| Error::invalid(format!("cannot parse length '{text}'")))?;
    if !value.is_finite() {
        return Err(Error::invalid(format!("length '{text}' is not finite")));
    }
    Ok(value * scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suffixes() {
        assert_eq!(parse_length_nm("1cm").unwrap(), 1e7);
        assert_eq!(parse_length_nm("1.0 mm").unwrap(), 1e6);
        assert_eq!(parse_length_nm("1um").unwrap(), 1e3);
        assert_eq!(parse_length_nm("1μm").unwrap(), 1e3);
        assert_eq!(parse_length_nm("620").unwrap(), 620.0);
        assert_eq!(parse_length_nm("620nm").unwrap(), 620.0);
        assert_eq!(parse_length_nm("2m").unwrap(), 2e9);
        assert_eq!(parse_length_nm("1e-2m").unwrap(), 1e7);
        assert_eq!(parse_length_nm("1e3").unwrap(), 1e3);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_length_nm("cm").is_err());
        assert!(parse_length_nm("1 furlong").is_err());
        assert!(parse_length_nm("").is_err());
    }
}
