//! Regenerates the frozen calibration constants used by the acceptance
//! tests: the log-weighted residual envelope, the reciprocal-harmonic
//! partial sum at 1e6, the zero-sum truncation gap, and the oscillation
//! difference series on the standard grid.
//!
//! Run with: cargo run --release -p mulab-core --example calibrate

use mulab_core::euler::mu_over_k_decade_maxima;
use mulab_core::identity::log_weighted_mu_residual;
use mulab_core::power::{oscillatory_power_sum, PowerParam};
use mulab_core::psi::{chebyshev_psi, explicit_formula_sum, load_zeta_zeros, oscillation_compare};
use mulab_core::sieve::SieveTable;

fn main() {
    let table = SieveTable::build(1_000_000, 1 << 16).unwrap();
    let zeros_path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zeta_zeros.txt");
    let zeros = load_zeta_zeros(zeros_path).unwrap();

    println!("== log-weighted residual (EQ8) by decade ==");
    for exp in 1..=6u32 {
        let x = 10f64.powi(exp as i32);
        let r = log_weighted_mu_residual(x, &table).unwrap();
        let lhs = r.computed.approx_f64();
        println!(
            "x = 1e{exp}: residual = {:.6e}  residual*ln(x) = {:.4}  |lhs+1| = {:.6}",
            r.residual_f64(),
            r.residual_f64() * x.ln(),
            (lhs + 1.0).abs()
        );
    }
    let mut worst = (0u64, 0.0f64);
    for x in 2..=5_000u64 {
        let r = log_weighted_mu_residual(x as f64, &table).unwrap();
        let scaled = r.residual_f64() * (x as f64).ln();
        if scaled > worst.1 {
            worst = (x, scaled);
        }
    }
    println!(
        "max residual*ln(x) over x in [2, 5000]: {:.4} at x = {}",
        worst.1, worst.0
    );
    let full = log_weighted_mu_residual(1e6, &table).unwrap();
    println!(
        "lhs(1e6) = {:.17e}   rhs(1e6) = {:.17e}",
        full.computed.approx_f64(),
        full.expected.approx_f64()
    );

    println!("\n== m_x = sum mu(k)/k ==");
    for exp in [4u32, 6] {
        let x = 10f64.powi(exp as i32);
        let m = oscillatory_power_sum(x, &PowerParam::float_real(1.0), &table)
            .unwrap()
            .approx_f64();
        println!("m(1e{exp}) = {m:.17e}");
    }
    let maxima = mu_over_k_decade_maxima(&table, 1, 6).unwrap();
    println!("decade maxima of |m_x|: {maxima:?}");

    println!("\n== zero-sum truncation at x = 1000.5, 50 pairs ==");
    let x = 1000.5f64;
    let lhs = explicit_formula_sum(x, &zeros, 50).unwrap();
    let psi = chebyshev_psi(x, &table).unwrap();
    let classical = x - psi - (2.0 * std::f64::consts::PI).ln();
    println!("zero sum      = {lhs:.12}");
    println!("x - psi - log2pi = {classical:.12}");
    println!("gap           = {:.6}", (lhs - classical).abs());

    println!("\n== oscillation grid 100.5..2000.5 step 100, 100 pairs ==");
    let grid: Vec<f64> = (0..20).map(|i| 100.5 + 100.0 * i as f64).collect();
    let cmp = oscillation_compare(&grid, &zeros, 100, &table).unwrap();
    for p in &cmp.points {
        let psi = chebyshev_psi(p.x, &table).unwrap();
        let oracle = p.x - psi - (2.0 * std::f64::consts::PI).ln() - p.rhs;
        println!(
            "x = {:7.1}: diff = {:+.15e}  oracle = {:+.6}  signs agree = {}",
            p.x,
            p.diff,
            oracle,
            (p.diff >= 0.0) == (oracle >= 0.0)
        );
    }
    println!("rms diff/sqrt(x) = {:.6e}", cmp.rms_normalized.unwrap());
    let agree = cmp
        .points
        .iter()
        .filter(|p| {
            let psi = chebyshev_psi(p.x, &table).unwrap();
            let oracle = p.x - psi - (2.0 * std::f64::consts::PI).ln() - p.rhs;
            (p.diff >= 0.0) == (oracle >= 0.0)
        })
        .count();
    println!("sign agreement: {agree}/20");
}
