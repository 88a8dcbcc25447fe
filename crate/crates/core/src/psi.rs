//! Chebyshev's psi function, its convolution identities, the
//! regular/oscillatory split, and the comparison of the oscillatory part
//! against a truncated sum over nontrivial zeta zeros.
//!
//! With psi(x) = sum_{n<=x} Lambda(n), the exact identities checked here
//! (`EQ56`, float rounding only):
//!
//! ```text
//! log floor(x)!                 = sum_{k<=x} psi(x/k)
//! psi(x) + log x                = sum_{k<=x} mu(k) floor(x/k) log(x/k)
//! ```
//!
//! and the split (`EQ57`), exact because floor = value - fractional part:
//!
//! ```text
//! psi(x) = x * sum_{k<=x} mu(k)/k log(x/k)
//!        - ( sum_{k<=x} mu(k) {x/k} log(x/k) + log x )
//! ```
//!
//! The second group is the oscillatory part; `EQ58` compares it against
//! 2 Re sum over zero ordinates of x^rho / rho, rho = 1/2 + i gamma, an
//! approximate relation reported with differences and no asserted bound.

use std::io::BufRead;
use std::path::Path;
use std::time::Instant;

use num::complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::format::fmt_f64;
use crate::identity::IdentityReport;
use crate::power::{for_each_floor_block, PowerParam, SumValue};
use crate::sieve::SieveTable;

/// Chebyshev psi(floor(x)) = sum of von Mangoldt values up to x.
pub fn chebyshev_psi(x: f64, table: &SieveTable) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain {
            what: "chebyshev_psi",
            requirement: "x >= 0",
            got: x.to_string(),
        });
    }
    let n = x as u64;
    if n > table.limit() {
        return Err(Error::OutOfRange {
            n,
            limit: table.limit(),
        });
    }
    let mut acc = 0.0f64;
    for m in 2..=n {
        acc += table.von_mangoldt_at(m);
    }
    Ok(acc)
}

fn checked_n(x: f64, table: &SieveTable, what: &'static str) -> Result<u64> {
    if !(x >= 1.0) {
        return Err(Error::Domain {
            what,
            requirement: "x >= 1",
            got: x.to_string(),
        });
    }
    let n = x as u64;
    if n > table.limit() {
        return Err(Error::OutOfRange {
            n,
            limit: table.limit(),
        });
    }
    Ok(n)
}

/// psi at every distinct floor quotient of n, one Lambda pass.
fn psi_at_quotients(n: u64, table: &SieveTable) -> (Vec<u64>, Vec<f64>) {
    let mut points = Vec::new();
    for_each_floor_block(n, |_, _, k_hi| points.push(k_hi));
    let mut values = Vec::with_capacity(points.len());
    let mut acc = 0.0f64;
    let mut next = 0usize;
    for m in 1..=n {
        acc += table.von_mangoldt_at(m);
        if next < points.len() && points[next] == m {
            values.push(acc);
            next += 1;
        }
    }
    (points, values)
}

/// Residuals of the two psi convolution identities at x; both are exact,
/// so the residuals are pure float rounding. Returned as (`EQ56L1`,
/// `EQ56L5`) reports.
pub fn verify_psi_convolution(
    x: f64,
    table: &SieveTable,
) -> Result<(IdentityReport, IdentityReport)> {
    let started = Instant::now();
    let n = checked_n(x, table, "verify_psi_convolution")?;

    // line 1: log floor(x)! = sum_{k<=x} psi(x/k), blocked over quotients
    let mut log_factorial = 0.0f64;
    for m in 2..=n {
        log_factorial += (m as f64).ln();
    }
    let (points, psi_vals) = psi_at_quotients(n, table);
    let mut psi_conv = 0.0f64;
    let mpts = points.len();
    {
        let mut i = 0usize;
        for_each_floor_block(n, |_, k_lo, k_hi| {
            // quotient of block i is points[mpts-1-i]
            psi_conv += (k_hi - k_lo + 1) as f64 * psi_vals[mpts - 1 - i];
            i += 1;
        });
    }
    let line1 = report(
        "EQ56L1",
        x,
        SumValue::float_real(log_factorial),
        SumValue::float_real(psi_conv),
        started,
    );

    // line 5: psi(x) + log x = sum mu(k) floor(x/k) log(x/k); the log sees
    // the real quotient x/k, the floor its integer part
    let started5 = Instant::now();
    let psi_x = *psi_vals.last().expect("n >= 1");
    let mut rhs = 0.0f64;
    for k in 1..=n {
        let mu = table.mu_at(k);
        if mu != 0 {
            let q = x / k as f64;
            rhs += mu as f64 * (q as u64) as f64 * q.ln();
        }
    }
    let line5 = report(
        "EQ56L5",
        x,
        SumValue::float_real(psi_x + x.ln()),
        SumValue::float_real(rhs),
        started5,
    );
    Ok((line1, line5))
}

/// The regular/oscillatory split of psi at one x.
#[derive(Debug, Clone)]
pub struct PsiDecomposition {
    pub x: f64,
    pub psi: f64,
    /// x * sum_{k<=x} mu(k)/k * log(x/k)
    pub regular: f64,
    /// sum_{k<=x} mu(k) {x/k} log(x/k) + log x
    pub oscillatory: f64,
    /// |regular - oscillatory - psi|, float rounding only.
    pub residual: f64,
}

impl PsiDecomposition {
    pub fn csv_header() -> &'static str {
        "x,psi,regular,oscillatory,residual"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            fmt_f64(self.x),
            fmt_f64(self.psi),
            fmt_f64(self.regular),
            fmt_f64(self.oscillatory),
            fmt_f64(self.residual)
        )
    }

    pub fn to_json(&self) -> String {
        format!(
            "{{\"x\":{},\"psi\":{},\"regular\":{},\"oscillatory\":{},\"residual\":{}}}",
            fmt_f64(self.x),
            fmt_f64(self.psi),
            fmt_f64(self.regular),
            fmt_f64(self.oscillatory),
            fmt_f64(self.residual)
        )
    }
}

/// Splits psi(x) into the regular part and the oscillatory remainder.
pub fn psi_decompose(x: f64, table: &SieveTable) -> Result<PsiDecomposition> {
    let n = checked_n(x, table, "psi_decompose")?;
    let psi = chebyshev_psi(x, table)?;
    let mut regular = 0.0f64;
    let mut oscillatory = x.ln();
    for k in 1..=n {
        let mu = table.mu_at(k);
        if mu != 0 {
            let kf = k as f64;
            let q = x / kf;
            let lq = q.ln();
            regular += mu as f64 / kf * lq;
            oscillatory += mu as f64 * (q - (q as u64) as f64) * lq;
        }
    }
    regular *= x;
    let residual = (regular - oscillatory - psi).abs();
    Ok(PsiDecomposition {
        x,
        psi,
        regular,
        oscillatory,
        residual,
    })
}

/// Ordinates of nontrivial zeta zeros ingested from a text file.
#[derive(Debug, Clone)]
pub struct ZetaZeros {
    gammas: Vec<f64>,
    source: String,
}

impl ZetaZeros {
    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// Provenance lines from the file header.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Parses the zeros format: '#' header lines, then one ascending
    /// positive decimal ordinate per line.
    pub fn parse<R: BufRead>(r: R) -> Result<Self> {
        let mut gammas = Vec::new();
        let mut source_lines = Vec::new();
        for (idx, line) in r.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix('#') {
                source_lines.push(rest.trim().to_string());
                continue;
            }
            let value: f64 = trimmed.parse().map_err(|_| Error::ZerosFormat {
                line: line_no,
                msg: format!("not a number: {trimmed:?}"),
            })?;
            if !value.is_finite() || value <= 1.0 {
                return Err(Error::ZerosFormat {
                    line: line_no,
                    msg: format!("ordinate {value} must be a finite number > 1"),
                });
            }
            if let Some(&last) = gammas.last() {
                if value <= last {
                    return Err(Error::ZerosOrder { line: line_no });
                }
            }
            gammas.push(value);
        }
        if gammas.is_empty() {
            return Err(Error::ZerosEmpty);
        }
        if !(14.0 < gammas[0] && gammas[0] < 14.3) {
            return Err(Error::ZerosFirstOutOfRange { value: gammas[0] });
        }
        Ok(ZetaZeros {
            gammas,
            source: source_lines.join("; "),
        })
    }
}

/// Loads and validates a zeros file.
pub fn load_zeta_zeros<P: AsRef<Path>>(path: P) -> Result<ZetaZeros> {
    let file = std::fs::File::open(path)?;
    ZetaZeros::parse(std::io::BufReader::new(file))
}

/// Truncated zero sum: 2 Re( x^rho / rho ) over the first `pair_count`
/// conjugate pairs rho = 1/2 + i gamma. Smooth in x by construction.
pub fn explicit_formula_sum(x: f64, zeros: &ZetaZeros, pair_count: usize) -> Result<f64> {
    if pair_count > zeros.len() {
        return Err(Error::InsufficientZeros {
            requested: pair_count,
            available: zeros.len(),
        });
    }
    if !(x > 1.0) {
        return Err(Error::Domain {
            what: "explicit_formula_sum",
            requirement: "x > 1",
            got: x.to_string(),
        });
    }
    let ln_x = x.ln();
    let sqrt_x = x.sqrt();
    let mut acc = 0.0f64;
    for &gamma in &zeros.gammas()[..pair_count] {
        let rho = Complex64::new(0.5, gamma);
        // x^rho = sqrt(x) * e^{i gamma ln x}
        let phase = Complex64::new(0.0, gamma * ln_x).exp();
        acc += 2.0 * (sqrt_x * phase / rho).re;
    }
    Ok(acc)
}

/// One grid point of the oscillation comparison.
#[derive(Debug, Clone, Copy)]
pub struct OscillationPoint {
    pub x: f64,
    /// zero-sum side
    pub lhs: f64,
    /// mu-weighted fractional-part side
    pub rhs: f64,
    pub diff: f64,
}

/// Comparison series over a grid plus the RMS of diff/sqrt(x); the RMS is
/// None for an empty grid.
#[derive(Debug, Clone)]
pub struct OscillationComparison {
    pub points: Vec<OscillationPoint>,
    pub rms_normalized: Option<f64>,
}

impl OscillationComparison {
    pub fn csv_header() -> &'static str {
        "x,lhs,rhs,diff"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,lhs,rhs,diff\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_f64(p.x),
                fmt_f64(p.lhs),
                fmt_f64(p.rhs),
                fmt_f64(p.diff)
            ));
        }
        out
    }
}

/// Evaluates both sides of the oscillation relation on a grid. Grid points
/// run in parallel; output order follows the input grid.
pub fn oscillation_compare(
    grid: &[f64],
    zeros: &ZetaZeros,
    pair_count: usize,
    table: &SieveTable,
) -> Result<OscillationComparison> {
    let points: Result<Vec<OscillationPoint>> = grid
        .par_iter()
        .map(|&x| {
            let lhs = explicit_formula_sum(x, zeros, pair_count)?;
            let rhs = psi_decompose(x, table)?.oscillatory;
            Ok(OscillationPoint {
                x,
                lhs,
                rhs,
                diff: lhs - rhs,
            })
        })
        .collect();
    let points = points?;
    let rms_normalized = if points.is_empty() {
        None
    } else {
        let sum_sq: f64 = points.iter().map(|p| (p.diff / p.x.sqrt()).powi(2)).sum();
        Some((sum_sq / points.len() as f64).sqrt())
    };
    Ok(OscillationComparison {
        points,
        rms_normalized,
    })
}

fn report(
    id: &'static str,
    x: f64,
    expected: SumValue,
    computed: SumValue,
    started: Instant,
) -> IdentityReport {
    let residual = (computed.clone() - expected.clone()).abs();
    IdentityReport {
        id,
        x,
        s: PowerParam::float_real(1.0),
        expected,
        computed,
        residual,
        elapsed: started.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn table(n: u64) -> SieveTable {
        SieveTable::build(n, 1 << 12).unwrap()
    }

    #[test]
    fn psi_values() {
        let t = table(100);
        assert_eq!(chebyshev_psi(1.0, &t).unwrap(), 0.0);
        let expect = 3.0 * 2f64.ln() + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
        let got = chebyshev_psi(10.0, &t).unwrap();
        assert!((got - expect).abs() < 1e-12, "psi(10) = {got}");
        assert!((got - 7.8320).abs() < 1e-4);
        assert_eq!(chebyshev_psi(10.9, &t).unwrap(), got);
    }

    #[test]
    fn convolution_identities_small() {
        let t = table(100);
        let (l1, l5) = verify_psi_convolution(3.0, &t).unwrap();
        // log 3! = psi(3) + psi(1.5) + psi(1) = log2 + log3
        assert!(l1.residual_f64() < 1e-14, "line1 {}", l1.residual_f64());
        assert!(l5.residual_f64() < 1e-14, "line5 {}", l5.residual_f64());
        let (l1, l5) = verify_psi_convolution(1.0, &t).unwrap();
        assert!(l1.residual_f64() == 0.0);
        assert!(l5.residual_f64() < 1e-15);
    }

    #[test]
    fn convolution_identities_at_ten_thousand() {
        let t = table(10_000);
        let (l1, l5) = verify_psi_convolution(10_000.0, &t).unwrap();
        assert!(l1.residual_f64() < 1e-8, "line1 {}", l1.residual_f64());
        assert!(l5.residual_f64() < 1e-8, "line5 {}", l5.residual_f64());
    }

    #[test]
    fn decomposition_by_hand_at_two() {
        let t = table(10);
        let d = psi_decompose(2.0, &t).unwrap();
        // regular = 2(log2 + (-1/2) log1) = 2 log2; oscillatory = log2
        assert!((d.regular - 2.0 * 2f64.ln()).abs() < 1e-15);
        assert!((d.oscillatory - 2f64.ln()).abs() < 1e-15);
        assert!((d.psi - 2f64.ln()).abs() < 1e-15);
        assert!(d.residual < 1e-15);

        let d1 = psi_decompose(1.0, &t).unwrap();
        assert_eq!(d1.psi, 0.0);
        assert_eq!(d1.regular, 0.0);
        assert!(d1.oscillatory.abs() < 1e-15);
    }

    #[test]
    fn decomposition_reconstructs_psi() {
        let t = table(100_000);
        for x in [17.0, 1_000.5, 100_000.0] {
            let d = psi_decompose(x, &t).unwrap();
            assert!(d.residual < 1e-7, "x={x} residual {}", d.residual);
        }
    }

    #[test]
    fn zeros_parsing_happy_path() {
        let text = "# test zeros\n# second header\n14.134725142\n21.022039639\n25.010857580\n";
        let z = ZetaZeros::parse(Cursor::new(text)).unwrap();
        assert_eq!(z.len(), 3);
        assert_eq!(z.gammas()[0], 14.134725142);
        assert_eq!(z.source(), "test zeros; second header");
    }

    #[test]
    fn zeros_parsing_rejects_bad_files() {
        assert!(matches!(
            ZetaZeros::parse(Cursor::new("# only header\n")),
            Err(Error::ZerosEmpty)
        ));
        match ZetaZeros::parse(Cursor::new("14.134725142\n13.0\n")) {
            Err(Error::ZerosOrder { line }) => assert_eq!(line, 2),
            other => panic!("expected order error, got {other:?}"),
        }
        match ZetaZeros::parse(Cursor::new("14.134725142\nnot-a-number\n")) {
            Err(Error::ZerosFormat { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected format error, got {other:?}"),
        }
        assert!(matches!(
            ZetaZeros::parse(Cursor::new("15.5\n16.5\n")),
            Err(Error::ZerosFirstOutOfRange { .. })
        ));
    }

    #[test]
    fn explicit_sum_basics() {
        let z = ZetaZeros::parse(Cursor::new("14.134725142\n21.022039639\n")).unwrap();
        assert_eq!(explicit_formula_sum(10.0, &z, 0).unwrap(), 0.0);
        // one pair at x=2: direct complex arithmetic
        let rho = Complex64::new(0.5, 14.134725142);
        let expect = 2.0 * (Complex64::new(2.0, 0.0).powc(rho) / rho).re;
        let got = explicit_formula_sum(2.0, &z, 1).unwrap();
        assert!((got - expect).abs() < 1e-12, "got {got} expect {expect}");
        assert!(explicit_formula_sum(10.0, &z, 3).is_err());
        assert!(explicit_formula_sum(0.5, &z, 1).is_err());
    }

    #[test]
    fn empty_grid_flags_undefined_rms() {
        let t = table(100);
        let z = ZetaZeros::parse(Cursor::new("14.134725142\n")).unwrap();
        let c = oscillation_compare(&[], &z, 1, &t).unwrap();
        assert!(c.points.is_empty());
        assert!(c.rms_normalized.is_none());
        assert_eq!(c.to_csv(), "x,lhs,rhs,diff\n");
    }

    #[test]
    fn zero_sum_is_smooth_but_rhs_jumps_at_prime_powers() {
        let t = table(100);
        let z = ZetaZeros::parse(Cursor::new(
            "14.134725142\n21.022039639\n25.010857580\n30.424876126\n",
        ))
        .unwrap();
        let eps = 1e-6;
        for n in [7u64, 8, 9, 11, 32] {
            let nf = n as f64;
            let lhs_jump = explicit_formula_sum(nf + eps, &z, 4).unwrap()
                - explicit_formula_sum(nf - eps, &z, 4).unwrap();
            assert!(lhs_jump.abs() < 1e-3, "lhs jump at {n}: {lhs_jump}");
            let rhs_jump = psi_decompose(nf + eps, &t).unwrap().oscillatory
                - psi_decompose(nf - eps, &t).unwrap().oscillatory;
            let lambda = t.von_mangoldt(n).unwrap();
            assert!(
                (rhs_jump.abs() - lambda).abs() < 1e-3,
                "rhs jump at {n}: {rhs_jump}, Lambda = {lambda}"
            );
        }
        // composite non-prime-power: no jump on either side
        let lhs_jump = explicit_formula_sum(12.0 + eps, &z, 4).unwrap()
            - explicit_formula_sum(12.0 - eps, &z, 4).unwrap();
        let rhs_jump = psi_decompose(12.0 + eps, &t).unwrap().oscillatory
            - psi_decompose(12.0 - eps, &t).unwrap().oscillatory;
        assert!(lhs_jump.abs() < 1e-3 && rhs_jump.abs() < 1e-3);
    }
}
