//! Deterministic text formatting for report rows.
//!
//! Every float is rendered to 15 significant digits in scientific notation
//! so that identical runs produce byte-identical CSV and JSON. Exact
//! rationals are rendered without rounding.

use num::complex::Complex64;
use num::rational::BigRational;
use num::One;

use crate::power::{PowerParam, SumValue};

/// 15 significant digits, scientific; `0` and `-0` normalize to "0".
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    format!("{v:.14e}")
}

/// Exact rationals print as `num/den`, integers as plain integers.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Complex values print as `re+imi` with no comma, so they embed in CSV.
pub fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        fmt_f64(c.re)
    } else if c.im < 0.0 {
        format!("{}-{}i", fmt_f64(c.re), fmt_f64(-c.im))
    } else {
        format!("{}+{}i", fmt_f64(c.re), fmt_f64(c.im))
    }
}

pub fn fmt_sum_value(v: &SumValue) -> String {
    match v {
        SumValue::Exact(r) => fmt_rational(r),
        SumValue::Float(c) => fmt_complex(*c),
    }
}

pub fn fmt_power_param(s: &PowerParam) -> String {
    match s {
        PowerParam::Exact(k) => k.to_string(),
        PowerParam::Float(c) => fmt_complex(*c),
    }
}

/// Minimal JSON string escaping; report fields contain no exotic text.
pub fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}
