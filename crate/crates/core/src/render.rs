//! Rendering of exact integers as base-2 logarithms at 3 significant
//! figures. The reference tables were produced with a 3-digit decimal
//! real type whose binary significand holds 10 bits, so values are first
//! rounded to a 10-bit significand and then to 3 decimal figures; both
//! steps are reproduced here to keep the output byte-stable.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// `log2` of a positive integer of any size, accurate to well below the
/// 10-bit significand used for display.
pub fn log2_biguint(v: &BigUint) -> f64 {
    assert!(!v.is_zero(), "log2 of zero");
    let bits = v.bits();
    if bits <= 64 {
        return (v.to_u64().unwrap() as f64).log2();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().unwrap();
    shift as f64 + (top as f64).log2()
}

/// Round to a 10-bit binary significand (unit in the last place is
/// `2^(e-9)` where `e = floor(log2(x))`).
pub fn round_sig10(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let e = x.abs().log2().floor() as i32;
    let ulp = (2.0f64).powi(e - 9);
    (x / ulp).round() * ulp
}

/// 3 significant decimal figures: two decimals below 10, one below 100,
/// integer with a trailing point above.
pub fn format_sig3(x: f64) -> String {
    let a = x.abs();
    if a < 10.0 {
        format!("{x:.2}")
    } else if a < 100.0 {
        format!("{x:.1}")
    } else {
        let digits = a.log10().floor() as i32 + 1;
        let scale = (10.0f64).powi(digits - 3);
        let y = (x / scale).round() * scale;
        format!("{y:.0}.")
    }
}

/// Rendered `log2` of a positive integer.
pub fn render_log2(v: &BigUint) -> String {
    format_sig3(round_sig10(log2_biguint(v)))
}

/// Rendered real (already on the log2 scale).
pub fn render_log2_value(x: f64) -> String {
    format_sig3(round_sig10(x))
}
