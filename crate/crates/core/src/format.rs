//! Text formatting shared by the CSV writers.

/// Significant digits used for floating-point text output unless overridden.
pub const DEFAULT_PRECISION: usize = 6;

/// Formats `x` with `digits` significant digits (at least 1).
///
/// Non-finite values print as `NA`. Magnitudes outside `[1e-5, 1e15)` switch
/// to scientific notation.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if !x.is_finite() {
        return "NA".to_owned();
    }
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&exponent) {
        return format!("{:.*e}", digits - 1, x);
    }
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a new leading digit (9.9999999 -> 10.00000)
    let carried = s
        .parse::<f64>()
        .is_ok_and(|r| r.abs() >= 10f64.powi(exponent + 1));
    if carried && decimals > 0 {
        format!("{x:.0$}", decimals - 1)
    } else {
        s
    }
}

/// Formats an optional value, `NA` when absent.
pub fn fmt_opt(x: Option<f64>, digits: usize) -> String {
    x.map_or_else(|| "NA".to_owned(), |v| fmt_sig(v, digits))
}
