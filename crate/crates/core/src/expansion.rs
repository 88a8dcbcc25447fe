//! Recursive sieved families of the harmonic power sum.
//!
//! `sieved(x, s, p)` is the sub-sum of `H_x(s)` over integers coprime to
//! the primorial of the prime preceding p, evaluated through the
//! recurrence
//!
//! ```text
//! sieved(x, s, 2) = H_x(s)
//! sieved(x, s, p) = sieved(x, s, p-) - p-^{-s} * sieved(x/p-, s, p-)
//! ```
//!
//! where `p-` is the prime preceding p. The reconstruction identity
//!
//! ```text
//! H_x(s) = 1 + sum over primes p <= x of p^{-s} * sieved(x/p, s, p)
//! ```
//!
//! holds exactly (`EQ11`; its s = 0 instance, counting integers, is
//! `EQ25`), because every n in [2, x] factors uniquely as p*m with p its
//! smallest prime factor and m coprime to all smaller primes.
//!
//! Intermediate arguments are never rounded: an argument x/d is carried as
//! the integer pair (floor(x), d), and `floor(floor(x)/d) = floor(x/d)`
//! for integer d, so leaf evaluations see exactly the floors the real
//! recursion would produce.

use std::collections::HashMap;
use std::time::Instant;

use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::format::{fmt_power_param, fmt_sum_value};
use crate::identity::{is_small_prime, IdentityReport};
use crate::power::{harmonic_power_sum, term_exact, term_float, PowerParam, SumValue};
use crate::sieve::SieveTable;

/// Memoized evaluator for the sieved family at one exponent.
struct Expander<'a> {
    s: PowerParam,
    /// Ascending primes; recursion depth i sieves by primes[..i].
    primes: Vec<u64>,
    memo: HashMap<(usize, u64), SumValue>,
    count_memo: HashMap<(usize, u64), i64>,
    leaf: HashMap<u64, SumValue>,
    _table: &'a SieveTable,
}

impl<'a> Expander<'a> {
    fn new(table: &'a SieveTable, s: PowerParam, max_prime: u64) -> Self {
        let primes = (2..=max_prime).filter(|&q| is_small_prime(q)).collect();
        Expander {
            s,
            primes,
            memo: HashMap::new(),
            count_memo: HashMap::new(),
            leaf: HashMap::new(),
            _table: table,
        }
    }

    fn prime_index(&self, p: u64) -> Option<usize> {
        self.primes.iter().position(|&q| q == p)
    }

    /// H^(primes[i])_a(s): sum over k <= a coprime to primes[..i].
    fn eval(&mut self, i: usize, a: u64) -> SumValue {
        if a == 0 {
            return SumValue::zero_for(&self.s);
        }
        if i == 0 {
            if let Some(v) = self.leaf.get(&a) {
                return v.clone();
            }
            let v = harmonic_power_sum(a as f64, &self.s).expect("a >= 1");
            self.leaf.insert(a, v.clone());
            return v;
        }
        if let Some(v) = self.memo.get(&(i, a)) {
            return v.clone();
        }
        let q = self.primes[i - 1];
        let head = self.eval(i - 1, a);
        let tail = self.eval(i - 1, a / q);
        let weight = match self.s {
            PowerParam::Exact(si) => SumValue::Exact(term_exact(q, si)),
            PowerParam::Float(sc) => SumValue::Float(term_float(q, sc)),
        };
        let v = head - weight * tail;
        self.memo.insert((i, a), v.clone());
        v
    }

    /// Integer fast path for s = 0: counts k <= a coprime to primes[..i].
    fn eval_count(&mut self, i: usize, a: u64) -> i64 {
        if a == 0 {
            return 0;
        }
        if i == 0 {
            return a as i64;
        }
        if let Some(&v) = self.count_memo.get(&(i, a)) {
            return v;
        }
        let q = self.primes[i - 1];
        let v = self.eval_count(i - 1, a) - self.eval_count(i - 1, a / q);
        self.count_memo.insert((i, a), v);
        v
    }

    fn eval_dispatch(&mut self, i: usize, a: u64) -> SumValue {
        match self.s {
            PowerParam::Exact(0) => SumValue::exact_int(self.eval_count(i, a)),
            _ => self.eval(i, a),
        }
    }
}

fn checked_arg(x: f64, table: &SieveTable, what: &'static str) -> Result<u64> {
    if !(x >= 0.0) {
        return Err(Error::Domain {
            what,
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
    Ok(n)
}

/// The sieved harmonic sum H^(p)_x(s) via the recurrence. For s = 0 this
/// is the count of integers <= x coprime to the primorial of the prime
/// preceding p.
pub fn harmonic_sieved(x: f64, s: &PowerParam, p: u64, table: &SieveTable) -> Result<SumValue> {
    if !is_small_prime(p) {
        return Err(Error::NotPrime { p });
    }
    let n = checked_arg(x, table, "harmonic_sieved")?;
    let mut ex = Expander::new(table, *s, p);
    let i = ex.prime_index(p).expect("p is in its own prime list");
    Ok(ex.eval_dispatch(i, n))
}

/// The same quantity by the definition's closed subtraction,
/// H^(p)_x = H_x - sum_{q<p} q^{-s} H^(q)_{x/q}, rather than the one-step
/// recurrence. Kept as a second route for consistency checks.
pub fn harmonic_sieved_subtraction_form(
    x: f64,
    s: &PowerParam,
    p: u64,
    table: &SieveTable,
) -> Result<SumValue> {
    if !is_small_prime(p) {
        return Err(Error::NotPrime { p });
    }
    let n = checked_arg(x, table, "harmonic_sieved_subtraction_form")?;
    let mut ex = Expander::new(table, *s, p);
    let mut acc = if n == 0 {
        SumValue::zero_for(s)
    } else {
        harmonic_power_sum(n as f64, s)?
    };
    let below: Vec<u64> = ex.primes.iter().copied().filter(|&q| q < p).collect();
    for (i, q) in below.iter().enumerate() {
        let weight = match *s {
            PowerParam::Exact(si) => SumValue::Exact(term_exact(*q, si)),
            PowerParam::Float(sc) => SumValue::Float(term_float(*q, sc)),
        };
        let inner = ex.eval_dispatch(i, n / q);
        acc -= weight * inner;
    }
    Ok(acc)
}

/// Rebuilds H_x(s) from the full prime expansion and reports the residual
/// (id `EQ11`, or `EQ25` for the s = 0 counting instance).
pub fn reconstruct_harmonic(x: f64, s: &PowerParam, table: &SieveTable) -> Result<IdentityReport> {
    let started = Instant::now();
    let n = checked_arg(x, table, "reconstruct_harmonic")?;
    if n < 1 {
        return Err(Error::Domain {
            what: "reconstruct_harmonic",
            requirement: "x >= 1",
            got: x.to_string(),
        });
    }
    let id = match s {
        PowerParam::Exact(0) => "EQ25",
        PowerParam::Float(c) if *c == Complex64::zero() => "EQ25",
        _ => "EQ11",
    };
    let expected = harmonic_power_sum(x, s)?;
    let mut ex = Expander::new(table, *s, n.max(2));
    let mut acc = match s {
        PowerParam::Exact(_) => SumValue::exact_int(1),
        PowerParam::Float(_) => SumValue::float_real(1.0),
    };
    let prime_list = ex.primes.clone();
    for (i, q) in prime_list.iter().enumerate().filter(|(_, q)| **q <= n) {
        let weight = match *s {
            PowerParam::Exact(si) => SumValue::Exact(term_exact(*q, si)),
            PowerParam::Float(sc) => SumValue::Float(term_float(*q, sc)),
        };
        // the term for prime q sieves by all primes below q, then descends
        // to the argument x/q
        let inner = ex.eval_dispatch(i, n / q);
        acc += weight * inner;
    }
    Ok(report_from(id, x, *s, expected, acc, started))
}

fn report_from(
    id: &'static str,
    x: f64,
    s: PowerParam,
    expected: SumValue,
    computed: SumValue,
    started: Instant,
) -> IdentityReport {
    let residual = (computed.clone() - expected.clone()).abs();
    IdentityReport {
        id,
        x,
        s,
        expected,
        computed,
        residual,
        elapsed: started.elapsed(),
    }
}

/// Legendre-style inclusion-exclusion count of integers <= x coprime to
/// every prime in `primes`. Independent of the recurrence machinery; the
/// oracle side of the dual-route check.
pub fn coprime_count_oracle(x: f64, primes: &[u64]) -> Result<u64> {
    if primes.len() > 20 {
        return Err(Error::TooManyPrimes {
            count: primes.len(),
        });
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != primes.len() {
        return Err(Error::Domain {
            what: "coprime_count_oracle",
            requirement: "distinct primes",
            got: format!("{primes:?}"),
        });
    }
    if !(x >= 1.0) {
        return Ok(0);
    }
    let n = x as u64;
    let mut total = 0i64;
    for mask in 0u32..(1 << primes.len()) {
        let mut d = 1u64;
        let mut ok = true;
        for (i, &p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                match d.checked_mul(p) {
                    Some(v) => d = v,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if !ok || d > n {
            continue; // floor(n/d) = 0
        }
        let term = (n / d) as i64;
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total as u64)
}

/// Compares the finite ratio against its Euler-product limit:
/// pi^(p)_x / x for s = 0 (`EQ32`), H^(p)_x / H_x for s = 1 (`EQ22`),
/// H^(p)_x(s) / H_x(s) otherwise (`EQ17`). The s = 0 and s = 1 limits
/// coincide: prod_{q<p} (1 - 1/q).
pub fn ratio_report(x: f64, s: &PowerParam, p: u64, table: &SieveTable) -> Result<IdentityReport> {
    let started = Instant::now();
    if !is_small_prime(p) {
        return Err(Error::NotPrime { p });
    }
    let n = checked_arg(x, table, "ratio_report")?;
    if n < 1 {
        return Err(Error::Domain {
            what: "ratio_report",
            requirement: "x >= 1",
            got: x.to_string(),
        });
    }
    let s_complex = s.as_complex();
    let id = if s_complex == Complex64::zero() {
        "EQ32"
    } else if s_complex == Complex64::new(1.0, 0.0) {
        "EQ22"
    } else {
        "EQ17"
    };
    // the density product: exponent 1 when s = 0, s itself otherwise
    let prod_exp_exact = |si: i32| if si == 0 { 1 } else { si };
    let primes_below: Vec<u64> = (2..p).filter(|&q| is_small_prime(q)).collect();

    // Exact rationals below 10^4 at integer x (oracle duty); float above
    // (speed).
    let exact_route = s.is_exact() && n <= 10_000 && x.fract() == 0.0;
    let (computed, expected) = if exact_route {
        let si = match s {
            PowerParam::Exact(v) => *v,
            PowerParam::Float(_) => unreachable!(),
        };
        let numer = harmonic_sieved(x, s, p, table)?;
        let denom = if si == 0 {
            SumValue::exact_int(n as i64)
        } else {
            harmonic_power_sum(x, s)?
        };
        let ratio = match (numer.as_exact(), denom.as_exact()) {
            (Some(a), Some(b)) => SumValue::Exact(a / b),
            _ => unreachable!("exact route"),
        };
        let mut prod = BigRational::one();
        for &q in &primes_below {
            prod *= BigRational::one() - term_exact(q, prod_exp_exact(si));
        }
        (ratio, SumValue::Exact(prod))
    } else {
        let sf = PowerParam::Float(s_complex);
        let numer = harmonic_sieved(x, &sf, p, table)?.approx_c64();
        let denom = if s_complex == Complex64::zero() {
            Complex64::new(x, 0.0)
        } else {
            harmonic_power_sum(x, &sf)?.approx_c64()
        };
        let ratio = numer / denom;
        let prod_exp = if s_complex == Complex64::zero() {
            Complex64::new(1.0, 0.0)
        } else {
            s_complex
        };
        let mut prod = Complex64::one();
        for &q in &primes_below {
            prod *= Complex64::one() - term_float(q, prod_exp);
        }
        (SumValue::Float(ratio), SumValue::Float(prod))
    };
    Ok(report_from(id, x, *s, expected, computed, started))
}

/// The coincidence of the two density limits: reports
/// pi^(p)_x * H_x / (x * H^(p)_x) against 1 (id `EQ34`). Convergence is
/// slow and carries no stated rate, so the report is informational; no
/// tolerance is attached.
pub fn limit_coincidence_report(x: f64, p: u64, table: &SieveTable) -> Result<IdentityReport> {
    let started = Instant::now();
    if !is_small_prime(p) {
        return Err(Error::NotPrime { p });
    }
    let n = checked_arg(x, table, "limit_coincidence_report")?;
    if n < 1 {
        return Err(Error::Domain {
            what: "limit_coincidence_report",
            requirement: "x >= 1",
            got: x.to_string(),
        });
    }
    let s0 = PowerParam::Exact(0);
    let s1 = PowerParam::float_real(1.0);
    let count = harmonic_sieved(x, &s0, p, table)?.approx_f64();
    let h = harmonic_power_sum(x, &s1)?.approx_f64();
    let h_sieved = harmonic_sieved(x, &s1, p, table)?.approx_f64();
    let value = count * h / (x * h_sieved);
    Ok(report_from(
        "EQ34",
        x,
        s1,
        SumValue::float_real(1.0),
        SumValue::float_real(value),
        started,
    ))
}

/// The family H^(q)_x(s) over primes q <= p, with the memoized recursion
/// state and the full-expansion reconstruction residual.
#[derive(Debug, Clone)]
pub struct SieveExpansion {
    pub s: PowerParam,
    pub sieve_primes: Vec<u64>,
    /// (prime q, floored argument y, H^(q)_y(s)) for every memoized pair;
    /// sorted by (q, y).
    pub values: Vec<(u64, u64, SumValue)>,
    pub reconstruction_residual: SumValue,
}

impl SieveExpansion {
    /// CSV dump: `prime,argument,value` per stored pair.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("prime,argument,value\n");
        for (q, y, v) in &self.values {
            out.push_str(&format!("{q},{y},{}\n", fmt_sum_value(v)));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .values
            .iter()
            .map(|(q, y, v)| {
                format!(
                    "{{\"prime\":{q},\"argument\":{y},\"value\":\"{}\"}}",
                    fmt_sum_value(v)
                )
            })
            .collect();
        format!(
            "{{\"s\":\"{}\",\"values\":[{}],\"reconstruction_residual\":\"{}\"}}",
            fmt_power_param(&self.s),
            rows.join(","),
            fmt_sum_value(&self.reconstruction_residual)
        )
    }
}

/// Evaluates the family H^(q)_x(s) for every prime q <= p_max and packs
/// the touched memo state for inspection or CSV dumping.
pub fn expansion_family(
    x: f64,
    s: &PowerParam,
    p_max: u64,
    table: &SieveTable,
) -> Result<SieveExpansion> {
    if !is_small_prime(p_max) {
        return Err(Error::NotPrime { p: p_max });
    }
    let n = checked_arg(x, table, "expansion_family")?;
    if n < 1 {
        return Err(Error::Domain {
            what: "expansion_family",
            requirement: "x >= 1",
            got: x.to_string(),
        });
    }
    let mut ex = Expander::new(table, *s, p_max);
    let prime_list = ex.primes.clone();
    let mut values = Vec::new();
    for (i, &q) in prime_list.iter().enumerate() {
        let v = ex.eval_dispatch(i, n);
        values.push((q, n, v));
    }
    // fold in every memoized intermediate, tagged by its sieving prime
    match ex.s {
        PowerParam::Exact(0) => {
            for (&(i, a), &v) in ex.count_memo.iter() {
                if a != n {
                    values.push((prime_list[i], a, SumValue::exact_int(v)));
                }
            }
        }
        _ => {
            for (&(i, a), v) in ex.memo.iter() {
                if a != n {
                    values.push((prime_list[i], a, v.clone()));
                }
            }
        }
    }
    values.sort_by_key(|v| (v.0, v.1));
    values.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
    let recon = reconstruct_harmonic(x, s, table)?;
    Ok(SieveExpansion {
        s: *s,
        sieve_primes: prime_list,
        values,
        reconstruction_residual: recon.residual,
    })
}
