//! Number formatting shared by every text output.

/// Formats `v` rounded to 9 significant digits, period decimal separator.
/// Plain notation for magnitudes in `[1e-5, 1e15)`, exponent notation otherwise.
pub fn sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let rounded: f64 = format!("{v:.8e}").parse().expect("round trip of formatted float");
    let m = rounded.abs();
    if (1e-5..1e15).contains(&m) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}
