//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured quantities (visible with --nocapture; the harness
//! line itself is the pass/fail record).
//!
//! Exact criteria admit no tolerance: residuals must be the rational zero
//! or the exact integer. Float criteria carry the tolerance stated next to
//! each assertion. Regression constants were frozen from a calibration run
//! (`cargo run --release -p mulab-core --example calibrate`).

#![allow(clippy::excessive_precision)] // frozen constants keep full printed digits

use std::time::Instant;

use mulab_core::euler::{mu_over_k_decade_maxima, theta_truncated, verify_reciprocal, zeta_eval};
use mulab_core::expansion::{
    coprime_count_oracle, harmonic_sieved, ratio_report, reconstruct_harmonic,
};
use mulab_core::identity::{
    floor_sum_identity_lhs, log_weighted_mu_residual, mertens_sum_identity_lhs,
    verify_harmonic_identity, verify_oscillatory_identity,
};
use mulab_core::power::{oscillatory_power_sum, PowerParam};
use mulab_core::psi::{
    chebyshev_psi, load_zeta_zeros, oscillation_compare, psi_decompose, verify_psi_convolution,
    ZetaZeros,
};
use mulab_core::sieve::{mertens_direct_segmented, MertensMemo, SieveTable};
use num::complex::Complex64;
use rayon::prelude::*;

fn exact(s: i32) -> PowerParam {
    PowerParam::exact(s).unwrap()
}

fn zeros() -> ZetaZeros {
    let path = std::env::var("MULAB_ZEROS").unwrap_or_else(|_| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zeta_zeros.txt").to_string()
    });
    load_zeta_zeros(path).expect("zeros table")
}

#[test]
fn criterion_01_exact_identity_suite() {
    let started = Instant::now();
    let table = SieveTable::build(100_000, 1 << 15).unwrap();

    let small = SieveTable::build(300, 64).unwrap();
    (1..=300u64).into_par_iter().for_each(|x| {
        for s in [0, 1, 2] {
            let r = verify_harmonic_identity(x as f64, &exact(s), &small).unwrap();
            assert!(
                r.residual_is_exact_zero(),
                "EQ4 residual nonzero at x={x} s={s}"
            );
            let r = verify_oscillatory_identity(x as f64, &exact(s), &small).unwrap();
            assert!(
                r.residual_is_exact_zero(),
                "EQ38 residual nonzero at x={x} s={s}"
            );
        }
    });

    for x in 1..=100_000u64 {
        assert_eq!(
            floor_sum_identity_lhs(x as f64, &table).unwrap(),
            1,
            "EQ9 at x={x}"
        );
        assert_eq!(
            mertens_sum_identity_lhs(x as f64, &table).unwrap(),
            1,
            "EQ42 at x={x}"
        );
    }

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "suite took {elapsed:?}, budget 60 s"
    );
    println!(
        "criterion 01 PASS: EQ4/EQ38 exactly zero for x<=300, s in {{0,1,2}}; \
         EQ9/EQ42 equal 1 for x<=1e5; {elapsed:?}"
    );
}

#[test]
fn criterion_02_sieve_expansion_oracle() {
    let table = SieveTable::build(100_000, 1 << 15).unwrap();
    for p in [2u64, 3, 5, 7, 11] {
        let below: Vec<u64> = [2u64, 3, 5, 7].iter().copied().filter(|&q| q < p).collect();
        (1..=100_000u64).into_par_iter().for_each(|x| {
            let got = harmonic_sieved(x as f64, &exact(0), p, &table).unwrap();
            let oracle = coprime_count_oracle(x as f64, &below).unwrap();
            assert_eq!(
                got.as_exact().unwrap(),
                &num::BigRational::from_integer((oracle as i64).into()),
                "sieved count != inclusion-exclusion at x={x} p={p}"
            );
        });
    }
    println!(
        "criterion 02 PASS: sieved counts match inclusion-exclusion for all \
         x<=1e5, p in {{2,3,5,7,11}} (exact, zero tolerance)"
    );
}

#[test]
fn criterion_03_reconstruction() {
    let table = SieveTable::build(300, 64).unwrap();
    (1..=300u64).into_par_iter().for_each(|x| {
        for s in [0, 1, 2] {
            let r = reconstruct_harmonic(x as f64, &exact(s), &table).unwrap();
            assert!(
                r.residual_is_exact_zero(),
                "reconstruction residual nonzero at x={x} s={s}"
            );
        }
    });
    println!(
        "criterion 03 PASS: prime-expansion reconstruction exactly zero for \
         x<=300, s in {{0,1,2}}"
    );
}

#[test]
fn criterion_04_euler_product_limit() {
    let started = Instant::now();
    let table = SieveTable::build(1_000_000, 1 << 16).unwrap();
    let theta2 = theta_truncated(&PowerParam::float_real(2.0), 1e6, &table)
        .unwrap()
        .approx_f64();
    let limit = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
    let gap = (theta2 - limit).abs();
    assert!(gap <= 2e-6, "|M_x(2) - 6/pi^2| = {gap}, tolerance 2e-6");

    let r = verify_reciprocal(2.0, 1e6, &table).unwrap();
    let residual = r.residual.unwrap();
    assert!(
        residual <= 4e-6,
        "|zeta(2) * theta(2, 1e6) - 1| = {residual}, tolerance 4e-6"
    );
    println!(
        "criterion 04 PASS: |M(2)-6/pi^2| = {gap:.3e} (<=2e-6); \
         reciprocal residual = {residual:.3e} (<=4e-6); {:?}",
        started.elapsed()
    );
}

#[test]
fn criterion_05_ratio_limits() {
    let table = SieveTable::build(1_000_000, 1 << 16).unwrap();
    let r = ratio_report(1e6, &exact(0), 7, &table).unwrap();
    let res0 = r.residual_f64();
    assert!(
        res0 <= 8.0 / 1e6,
        "|pi^(7)/x - 4/15| = {res0}, tolerance 8/x"
    );
    // sanity: the expected value is literally 4/15
    assert!((r.expected.approx_f64() - 4.0 / 15.0).abs() < 1e-15);

    let r = ratio_report(1e6, &exact(2), 3, &table).unwrap();
    let res2 = r.residual_f64();
    assert!(res2 <= 1e-5, "s=2 ratio residual {res2}, tolerance 1e-5");
    assert!((r.expected.approx_f64() - 0.75).abs() < 1e-15);
    println!(
        "criterion 05 PASS: counting ratio residual {res0:.3e} (<=8e-6); \
         s=2 ratio residual {res2:.3e} (<=1e-5)"
    );
}

/// Frozen by the calibration run; finite behavior only, the infinite
/// limit is out of reach at desk scale by construction.
const M_AT_1E6_FROZEN: f64 = 2.00604685387814407e-4;

#[test]
fn criterion_06_pnt_proxy() {
    let table = SieveTable::build(1_000_000, 1 << 16).unwrap();
    let m = oscillatory_power_sum(1e6, &PowerParam::float_real(1.0), &table)
        .unwrap()
        .approx_f64();
    assert!(m.abs() < 0.01, "|m_x| at 1e6 = {}", m.abs());
    assert!(
        (m - M_AT_1E6_FROZEN).abs() < 1e-12,
        "m(1e6) regression: got {m:.17e}, frozen {M_AT_1E6_FROZEN:.17e}"
    );
    let maxima = mu_over_k_decade_maxima(&table, 1, 6).unwrap();
    for (i, w) in maxima.windows(2).enumerate() {
        assert!(
            w[1] <= w[0],
            "decade maxima increase between decades {i} and {}: {maxima:?}",
            i + 1
        );
    }
    println!(
        "criterion 06 PASS: m(1e6) = {m:.6e} (|.| < 0.01, frozen match); \
         decade maxima nonincreasing: {maxima:?}"
    );
}

/// Frozen by the calibration run.
const LOG_WEIGHTED_LHS_1E6_FROZEN: f64 = -9.97214695224755920e-1;

#[test]
fn criterion_07_log_weighted_trend() {
    let table = SieveTable::build(1_000_000, 1 << 16).unwrap();
    let r4 = log_weighted_mu_residual(1e4, &table).unwrap();
    let gap4 = (r4.computed.approx_f64() + 1.0).abs();
    assert!(gap4 < 0.1, "|lhs + 1| at 1e4 = {gap4}");

    let r6 = log_weighted_mu_residual(1e6, &table).unwrap();
    let lhs6 = r6.computed.approx_f64();
    let gap6 = (lhs6 + 1.0).abs();
    assert!(gap6 < gap4, "decade trend broken: {gap6} !< {gap4}");
    assert!(
        (lhs6 - LOG_WEIGHTED_LHS_1E6_FROZEN).abs() < 1e-9,
        "lhs(1e6) regression: got {lhs6:.17e}"
    );
    println!(
        "criterion 07 PASS: |lhs+1| = {gap4:.4} at 1e4, {gap6:.4} at 1e6 \
         (trend holds, frozen match)"
    );
}

#[test]
fn criterion_08_psi_identities() {
    let table = SieveTable::build(10_000, 1 << 13).unwrap();
    (1..=10_000u64).into_par_iter().for_each(|x| {
        let xf = x as f64;
        let budget = 1e-8 * xf;
        let (l1, l5) = verify_psi_convolution(xf, &table).unwrap();
        assert!(
            l1.residual_f64() <= budget,
            "factorial convolution residual {} at x={x}",
            l1.residual_f64()
        );
        assert!(
            l5.residual_f64() <= budget,
            "floor-log identity residual {} at x={x}",
            l5.residual_f64()
        );
        let d = psi_decompose(xf, &table).unwrap();
        assert!(
            d.residual <= budget,
            "decomposition residual {} at x={x}",
            d.residual
        );
    });
    println!(
        "criterion 08 PASS: psi convolution lines and regular/oscillatory \
         reconstruction within 1e-8*x for all x<=1e4"
    );
}

/// Difference series on the grid 100.5..2000.5 step 100 with 100 zero
/// pairs, frozen by the calibration run. Reproduced to 1e-9 for
/// determinism; the relation itself carries no stated bound.
const DIFF_SERIES_FROZEN: [f64; 20] = [
    -2.921349264454384e0,
    -2.059607563339759e0,
    -1.276843248287045e0,
    -4.274900693503381e0,
    -4.944592649430257e-1,
    -3.285343293246938e0,
    -4.740233961913188e0,
    -2.631360582865412e-1,
    -1.435686461009840e0,
    1.237818907611246e-1,
    -2.854025881682842e0,
    -5.353207540703835e0,
    -7.686271646439334e0,
    1.177836172229149e0,
    1.133516458410091e0,
    -5.323131919250167e0,
    4.946185623528634e0,
    -3.515128876658561e0,
    -8.121045923390733e0,
    3.920541369366190e0,
];

#[test]
fn criterion_09_explicit_formula() {
    let table = SieveTable::build(2_001, 512).unwrap();
    let zeros = zeros();
    assert!(zeros.len() >= 100, "need at least 100 zeros for this run");
    let grid: Vec<f64> = (0..20).map(|i| 100.5 + 100.0 * i as f64).collect();
    let cmp = oscillation_compare(&grid, &zeros, 100, &table).unwrap();
    assert_eq!(cmp.points.len(), 20);

    for (p, &frozen) in cmp.points.iter().zip(DIFF_SERIES_FROZEN.iter()) {
        assert!(
            (p.diff - frozen).abs() < 1e-9,
            "diff regression at x={}: got {:.15e}, frozen {frozen:.15e}",
            p.x,
            p.diff
        );
    }

    // qualitative agreement with the classical explicit-formula oracle
    let ln_2pi = (2.0 * std::f64::consts::PI).ln();
    let agree = cmp
        .points
        .iter()
        .filter(|p| {
            let oracle = p.x - chebyshev_psi(p.x, &table).unwrap() - ln_2pi - p.rhs;
            (p.diff >= 0.0) == (oracle >= 0.0)
        })
        .count();
    assert!(
        agree * 10 >= cmp.points.len() * 7,
        "sign agreement {agree}/{} below 70%",
        cmp.points.len()
    );
    println!(
        "criterion 09 PASS: 20-point difference series matches frozen values \
         to 1e-9; sign agreement with classical oracle {agree}/20"
    );
}

#[test]
fn criterion_10_mertens_performance() {
    // recurrence timing at 1e8 over a moderate table
    let table = SieveTable::build(4_000_000, 1 << 16).unwrap();
    let mut memo = MertensMemo::new(&table);
    let started = Instant::now();
    let m_1e8 = memo.eval(1e8).unwrap();
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 30,
        "mertens(1e8) took {elapsed:?}, budget 30 s"
    );

    // the recurrence agrees with segmented prefix sums at checkpoints
    let big = SieveTable::build(10_000_000, 1 << 16).unwrap();
    let small = SieveTable::build(1_000_000, 1 << 16).unwrap();
    let mut small_memo = MertensMemo::new(&small);
    for k in 1..=10u64 {
        let x = k * 1_000_000;
        assert_eq!(
            small_memo.eval(x as f64).unwrap(),
            big.mertens_prefix(x).unwrap(),
            "checkpoint {x}"
        );
    }

    // independent route: stream the segmented sieve over the full range
    let direct = mertens_direct_segmented(100_000_000, 1 << 18).unwrap();
    assert_eq!(m_1e8, direct, "recurrence vs direct segmented sum at 1e8");

    // published values of M(10^k)
    assert_eq!(big.mertens_prefix(1_000_000).unwrap(), 212);
    assert_eq!(big.mertens_prefix(10_000_000).unwrap(), 1037);
    assert_eq!(m_1e8, 1928);
    println!(
        "criterion 10 PASS: mertens(1e8) = {m_1e8} in {elapsed:?} (< 30 s), \
         matches direct segmented sum and prefix checkpoints"
    );
}

#[test]
fn zero_sum_truncation_against_classical_formula() {
    // companion check for the 50-pair truncation at a single point; the
    // 2.5 window was frozen from the calibration run (observed gap 1.95)
    let table = SieveTable::build(1_001, 256).unwrap();
    let zeros = zeros();
    let x = 1000.5f64;
    let lhs = mulab_core::psi::explicit_formula_sum(x, &zeros, 50).unwrap();
    let classical = x - chebyshev_psi(x, &table).unwrap() - (2.0 * std::f64::consts::PI).ln();
    assert!(
        (lhs - classical).abs() < 2.5,
        "50-pair zero sum {lhs} vs classical {classical}"
    );
}

#[test]
fn zeta_zeros_file_is_sane() {
    let zeros = zeros();
    assert!(zeros.len() >= 100);
    assert!((zeros.gammas()[0] - 14.134725141734694).abs() < 1e-9);
    assert!(!zeros.source().is_empty());
}

#[test]
fn exact_float_agreement_spot_checks() {
    // the float engines against exact rationals at mixed scales
    let table = SieveTable::build(10_000, 1 << 12).unwrap();
    for &x in &[137.0f64, 1_000.0, 10_000.0] {
        for s in [0, 1, 2] {
            let e = verify_harmonic_identity(x, &exact(s), &table).unwrap();
            assert!(e.residual_is_exact_zero());
            let f = verify_harmonic_identity(x, &PowerParam::float_real(s as f64), &table).unwrap();
            assert!(
                f.residual_f64()
                    < mulab_core::tolerances::identity_float_budget(
                        x,
                        &PowerParam::float_real(s as f64)
                    ),
                "float residual above budget at x={x} s={s}: {}",
                f.residual_f64()
            );
        }
    }
    // complex exponent sanity through the same verifier
    let sc = PowerParam::float(Complex64::new(1.5, 0.7));
    let r = verify_harmonic_identity(2_000.0, &sc, &table).unwrap();
    assert!(r.residual_f64() < 1e-10);
    let z = zeta_eval(Complex64::new(2.0, 0.0)).unwrap();
    assert!((z.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-10);
}
