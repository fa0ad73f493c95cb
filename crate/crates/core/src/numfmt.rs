//! Fixed numeric formatting for persisted artifacts.
//!
//! All generated files carry numbers rounded to 9 significant decimal
//! digits and printed with Rust's shortest round-trip formatter, which
//! is deterministic across platforms. Golden-file tests rely on this.

/// Round `x` to `digits` significant decimal digits.
pub fn round_to_significant(x: f64, digits: u32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(digits as i32 - 1 - magnitude);
    if !factor.is_finite() || factor == 0.0 {
        return x;
    }
    (x * factor).round() / factor
}

/// Artifact representation of a value: 9 significant digits, plain
/// decimal notation.
pub fn format_value(x: f64) -> String {
    let rounded = round_to_significant(x, 9);
    if rounded == 0.0 {
        return "0".to_string();
    }
    format!("{rounded}")
}
