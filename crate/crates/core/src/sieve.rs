//! Multiplicative-function tables: smallest prime factor, Möbius, Mertens
//! prefix sums, and the von Mangoldt function derived on demand.
//!
//! Construction is segmented so that large tables can be built in parallel;
//! the result is bit-identical regardless of segment size. After
//! construction a [`SieveTable`] is immutable and safe to share across
//! threads. [`MertensMemo`] extends Mertens evaluation beyond the table
//! limit through the recurrence `M(x) = 1 - sum_{k=2..x} M(floor(x/k))`,
//! blocked over the O(sqrt x) distinct floor quotients.

use std::collections::HashMap;
use std::io::{Read, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};

const MU_CACHE_MAGIC: &[u8; 5] = b"MLAB1";

/// Largest supported table limit; smallest-prime-factor entries are stored
/// in 32 bits.
pub const MAX_LIMIT: u64 = u32::MAX as u64;

/// Immutable table of μ(n), smallest prime factor and Mertens prefix sums
/// for 1..=limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveTable {
    limit: u64,
    /// spf[n] = smallest prime factor of n for 2 <= n <= limit; 0 for n < 2.
    spf: Vec<u32>,
    /// mu[n] = Möbius function of n; mu[0] = 0, mu[1] = 1.
    mu: Vec<i8>,
    /// mertens[n] = sum of mu[1..=n].
    mertens: Vec<i64>,
}

impl SieveTable {
    /// Builds the table for 1..=limit, processing index segments of
    /// `segment_size` in parallel.
    pub fn build(limit: u64, segment_size: u64) -> Result<Self> {
        if limit < 1 {
            return Err(Error::Domain {
                what: "build_sieve_table",
                requirement: "limit >= 1",
                got: limit.to_string(),
            });
        }
        if limit > MAX_LIMIT {
            return Err(Error::Domain {
                what: "build_sieve_table",
                requirement: "limit <= 2^32 - 1",
                got: limit.to_string(),
            });
        }
        if segment_size < 1 {
            return Err(Error::Domain {
                what: "build_sieve_table",
                requirement: "segment_size >= 1",
                got: segment_size.to_string(),
            });
        }

        let len = (limit + 1) as usize;
        let mut spf = try_vec::<u32>(len, limit)?;
        let mut mu = try_vec::<i8>(len, limit)?;
        mu[1] = 1;

        if limit >= 2 {
            let base = base_primes(limit);
            let seg = segment_size as usize;
            spf[2..]
                .par_chunks_mut(seg)
                .zip(mu[2..].par_chunks_mut(seg))
                .enumerate()
                .for_each(|(ci, (spf_chunk, mu_chunk))| {
                    let lo = 2 + (ci * seg) as u64;
                    sieve_segment(lo, &base, spf_chunk, mu_chunk);
                });
        }

        let mut mertens = try_vec::<i64>(len, limit)?;
        let mut acc = 0i64;
        for n in 1..len {
            acc += mu[n] as i64;
            mertens[n] = acc;
        }

        Ok(SieveTable {
            limit,
            spf,
            mu,
            mertens,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn check(&self, n: u64) -> Result<()> {
        if n < 1 || n > self.limit {
            Err(Error::OutOfRange {
                n,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    /// μ(n) for 1 <= n <= limit.
    pub fn moebius(&self, n: u64) -> Result<i8> {
        self.check(n)?;
        Ok(self.mu[n as usize])
    }

    /// μ(n) without the range check; n must be within 1..=limit.
    #[inline]
    pub(crate) fn mu_at(&self, n: u64) -> i8 {
        self.mu[n as usize]
    }

    /// Smallest prime factor of n for 2 <= n <= limit.
    pub fn smallest_prime_factor(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        if n < 2 {
            return Err(Error::OutOfRange {
                n,
                limit: self.limit,
            });
        }
        Ok(self.spf[n as usize] as u64)
    }

    /// Λ(n): log p when n = p^a is a prime power, 0 otherwise.
    pub fn von_mangoldt(&self, n: u64) -> Result<f64> {
        self.check(n)?;
        Ok(self.von_mangoldt_at(n))
    }

    #[inline]
    pub(crate) fn von_mangoldt_at(&self, n: u64) -> f64 {
        if n < 2 {
            return 0.0;
        }
        let p = self.spf[n as usize] as u64;
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        if m == 1 {
            (p as f64).ln()
        } else {
            0.0
        }
    }

    /// All primes <= bound, ascending. Requires bound <= limit.
    pub fn primes_up_to(&self, bound: u64) -> Result<Vec<u64>> {
        if bound > self.limit {
            return Err(Error::OutOfRange {
                n: bound,
                limit: self.limit,
            });
        }
        Ok((2..=bound)
            .filter(|&n| self.spf[n as usize] as u64 == n)
            .collect())
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        self.check(n)?;
        Ok(n >= 2 && self.spf[n as usize] as u64 == n)
    }

    /// M(n) = sum of μ(k) for k <= n.
    pub fn mertens_prefix(&self, n: u64) -> Result<i64> {
        self.check(n)?;
        Ok(self.mertens[n as usize])
    }

    #[inline]
    pub(crate) fn mertens_at(&self, n: u64) -> i64 {
        self.mertens[n as usize]
    }

    /// Writes the μ cache: magic, little-endian limit, μ as signed bytes.
    pub fn dump_mu<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(MU_CACHE_MAGIC)?;
        w.write_all(&self.limit.to_le_bytes())?;
        // i8 -> u8 is a bit-level cast; the reader undoes it.
        let bytes: Vec<u8> = self.mu[1..].iter().map(|&m| m as u8).collect();
        w.write_all(&bytes)?;
        Ok(())
    }

    /// Reads a μ cache written by [`SieveTable::dump_mu`] and rebuilds the
    /// smallest-prime-factor data it does not carry. The cache is a
    /// convenience only; nothing validates the stored μ beyond shape checks.
    pub fn load_mu<R: Read>(r: &mut R, segment_size: u64) -> Result<Self> {
        let mut magic = [0u8; 5];
        r.read_exact(&mut magic)
            .map_err(|e| Error::Cache { msg: e.to_string() })?;
        if &magic != MU_CACHE_MAGIC {
            return Err(Error::Cache {
                msg: format!("bad magic {magic:?}"),
            });
        }
        let mut lim = [0u8; 8];
        r.read_exact(&mut lim)
            .map_err(|e| Error::Cache { msg: e.to_string() })?;
        let limit = u64::from_le_bytes(lim);
        if !(1..=MAX_LIMIT).contains(&limit) {
            return Err(Error::Cache {
                msg: format!("bad limit {limit}"),
            });
        }
        let mut bytes = try_vec::<u8>(limit as usize, limit)?;
        r.read_exact(&mut bytes)
            .map_err(|e| Error::Cache { msg: e.to_string() })?;
        let mut tail = [0u8; 1];
        if r.read(&mut tail)? != 0 {
            return Err(Error::Cache {
                msg: "trailing bytes after mu data".into(),
            });
        }

        let len = (limit + 1) as usize;
        let mut mu = try_vec::<i8>(len, limit)?;
        for (n, &b) in bytes.iter().enumerate() {
            let v = b as i8;
            if !(-1..=1).contains(&v) {
                return Err(Error::Cache {
                    msg: format!("mu({}) = {} out of range", n + 1, v),
                });
            }
            mu[n + 1] = v;
        }

        let mut spf = try_vec::<u32>(len, limit)?;
        if limit >= 2 {
            let base = base_primes(limit);
            let seg = segment_size.max(1) as usize;
            spf[2..]
                .par_chunks_mut(seg)
                .enumerate()
                .for_each(|(ci, chunk)| {
                    let lo = 2 + (ci * seg) as u64;
                    spf_segment(lo, &base, chunk);
                });
        }

        let mut mertens = try_vec::<i64>(len, limit)?;
        let mut acc = 0i64;
        for n in 1..len {
            acc += mu[n] as i64;
            mertens[n] = acc;
        }

        Ok(SieveTable {
            limit,
            spf,
            mu,
            mertens,
        })
    }
}

/// Mertens evaluation beyond the table limit via the floor-quotient
/// recurrence, memoized on the argument.
///
/// The cache mutates on use; for concurrent evaluation take exclusive
/// access per thread (results are identical either way).
pub struct MertensMemo<'a> {
    table: &'a SieveTable,
    cache: HashMap<u64, i64>,
}

impl<'a> MertensMemo<'a> {
    pub fn new(table: &'a SieveTable) -> Self {
        MertensMemo {
            table,
            cache: HashMap::new(),
        }
    }

    pub fn table(&self) -> &SieveTable {
        self.table
    }

    /// M(⌊y⌋) for y >= 1.
    pub fn eval(&mut self, y: f64) -> Result<i64> {
        if !(y >= 1.0) {
            return Err(Error::Domain {
                what: "mertens",
                requirement: "y >= 1",
                got: y.to_string(),
            });
        }
        Ok(self.get(y as u64))
    }

    fn get(&mut self, n: u64) -> i64 {
        if n <= self.table.limit {
            return self.table.mertens_at(n);
        }
        if let Some(&v) = self.cache.get(&n) {
            return v;
        }
        // M(n) = 1 - sum_{d=2..n} M(n/d), blocked over constant quotients.
        let mut res = 1i64;
        let mut d = 2u64;
        while d <= n {
            let q = n / d;
            let d_end = n / q;
            res -= self.get(q) * (d_end - d + 1) as i64;
            d = d_end + 1;
        }
        self.cache.insert(n, res);
        res
    }
}

/// Sums μ over 1..=limit segment by segment without materializing a table.
/// Serves as an independent cross-check for the memoized recurrence.
pub fn mertens_direct_segmented(limit: u64, segment_size: u64) -> Result<i64> {
    if limit < 1 {
        return Err(Error::Domain {
            what: "mertens_direct_segmented",
            requirement: "limit >= 1",
            got: limit.to_string(),
        });
    }
    if limit > MAX_LIMIT {
        return Err(Error::Domain {
            what: "mertens_direct_segmented",
            requirement: "limit <= 2^32 - 1",
            got: limit.to_string(),
        });
    }
    if limit == 1 {
        return Ok(1);
    }
    let base = base_primes(limit);
    let seg = segment_size.max(1);
    let n_segments = (limit - 1).div_ceil(seg);
    let total: i64 = (0..n_segments)
        .into_par_iter()
        .map(|ci| {
            let lo = 2 + ci * seg;
            let hi = (lo + seg).min(limit + 1);
            let len = (hi - lo) as usize;
            let mut spf = vec![0u32; len];
            let mut mu = vec![0i8; len];
            sieve_segment(lo, &base, &mut spf, &mut mu);
            mu.iter().map(|&m| m as i64).sum::<i64>()
        })
        .sum();
    Ok(total + 1) // mu(1)
}

fn try_vec<T: Clone + Default>(len: usize, limit: u64) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len)
        .map_err(|_| Error::Resource { limit })?;
    v.resize(len, T::default());
    Ok(v)
}

/// Primes up to floor(sqrt(limit)) by a plain sieve of Eratosthenes.
fn base_primes(limit: u64) -> Vec<u64> {
    let bound = integer_sqrt(limit);
    if bound < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; (bound + 1) as usize];
    let mut primes = Vec::new();
    for n in 2..=bound {
        if !composite[n as usize] {
            primes.push(n);
            let mut m = n * n;
            while m <= bound {
                composite[m as usize] = true;
                m += n;
            }
        }
    }
    primes
}

pub(crate) fn integer_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r > 0 && r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Fills spf and μ for the index window [lo, lo + chunk_len).
///
/// Every multiple of every base prime is visited with full exponent
/// division, so the output depends only on (lo, len, base) and
/// segmentation cannot change it.
fn sieve_segment(lo: u64, base: &[u64], spf: &mut [u32], mu: &mut [i8]) {
    let len = spf.len();
    let hi = lo + len as u64;
    let mut rem: Vec<u64> = (lo..hi).collect();
    let mut sign: Vec<i8> = vec![1; len];
    let mut squarefree: Vec<bool> = vec![true; len];

    for &p in base {
        let mut m = lo.div_ceil(p) * p;
        if m < p {
            m = p;
        }
        while m < hi {
            let i = (m - lo) as usize;
            if spf[i] == 0 {
                spf[i] = p as u32;
            }
            let mut e = 0u32;
            while rem[i].is_multiple_of(p) {
                rem[i] /= p;
                e += 1;
            }
            if e >= 2 {
                squarefree[i] = false;
            }
            sign[i] = -sign[i];
            m += p;
        }
    }

    for i in 0..len {
        if rem[i] > 1 {
            // One leftover prime factor above sqrt(limit), multiplicity 1.
            sign[i] = -sign[i];
            if spf[i] == 0 {
                spf[i] = rem[i] as u32;
            }
        }
        mu[i] = if squarefree[i] { sign[i] } else { 0 };
    }
}

/// Smallest-prime-factor only; used when μ comes from a cache file.
fn spf_segment(lo: u64, base: &[u64], spf: &mut [u32]) {
    let len = spf.len();
    let hi = lo + len as u64;
    for &p in base {
        let mut m = lo.div_ceil(p) * p;
        if m < p {
            m = p;
        }
        while m < hi {
            let i = (m - lo) as usize;
            if spf[i] == 0 {
                spf[i] = p as u32;
            }
            m += p;
        }
    }
    for (i, s) in spf.iter_mut().enumerate() {
        if *s == 0 {
            *s = (lo + i as u64) as u32;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial-division Möbius, independent of the sieve.
    fn mu_by_factorization(n: u64) -> i8 {
        if n == 1 {
            return 1;
        }
        let mut m = n;
        let mut count = 0;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                m /= d;
                if m.is_multiple_of(d) {
                    return 0;
                }
                count += 1;
            }
            d += 1;
        }
        if m > 1 {
            count += 1;
        }
        if count % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn primes_by_trial(bound: u64) -> Vec<u64> {
        (2..=bound)
            .filter(|&n| {
                (2..n)
                    .take_while(|d| d * d <= n)
                    .all(|d| !n.is_multiple_of(d))
            })
            .collect()
    }

    #[test]
    fn mu_first_twelve() {
        let t = SieveTable::build(12, 4).unwrap();
        let expect: Vec<i8> = vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (n, &e) in (1..=12).zip(expect.iter()) {
            assert_eq!(t.moebius(n).unwrap(), e, "mu({n})");
        }
    }

    #[test]
    fn limit_one() {
        let t = SieveTable::build(1, 1).unwrap();
        assert_eq!(t.moebius(1).unwrap(), 1);
        assert_eq!(t.mertens_prefix(1).unwrap(), 1);
        assert!(t.moebius(2).is_err());
    }

    #[test]
    fn mu_matches_factorization_oracle() {
        let t = SieveTable::build(10_000, 1 << 10).unwrap();
        for n in 1..=10_000 {
            assert_eq!(t.moebius(n).unwrap(), mu_by_factorization(n), "mu({n})");
        }
    }

    #[test]
    fn segmentation_invariance() {
        for limit in [1_000u64, 100_000] {
            let mono = SieveTable::build(limit, limit).unwrap();
            for seg in [1u64, 7, 97, 32_768] {
                let s = SieveTable::build(limit, seg).unwrap();
                assert_eq!(s, mono, "limit {limit}, segment {seg}");
            }
        }
        let limit = 1_000_000u64;
        let mono = SieveTable::build(limit, limit).unwrap();
        let seg = SieveTable::build(limit, 32_768).unwrap();
        assert_eq!(seg, mono, "limit {limit}");
    }

    #[test]
    fn von_mangoldt_values() {
        let t = SieveTable::build(100, 16).unwrap();
        assert!((t.von_mangoldt(8).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(t.von_mangoldt(1).unwrap(), 0.0);
        assert_eq!(t.von_mangoldt(6).unwrap(), 0.0);
        // against a prime-power oracle
        for n in 1..=100u64 {
            let oracle = {
                let mut v = 0.0;
                for p in primes_by_trial(100) {
                    let mut pk = p;
                    while pk <= 100 {
                        if pk == n {
                            v = (p as f64).ln();
                        }
                        pk = match pk.checked_mul(p) {
                            Some(x) => x,
                            None => break,
                        };
                    }
                }
                v
            };
            assert!(
                (t.von_mangoldt(n).unwrap() - oracle).abs() < 1e-15,
                "Lambda({n})"
            );
        }
    }

    #[test]
    fn primes_listing() {
        let t = SieveTable::build(1_000, 100).unwrap();
        assert_eq!(t.primes_up_to(10).unwrap(), vec![2, 3, 5, 7]);
        assert!(t.primes_up_to(1).unwrap().is_empty());
        let p30 = t.primes_up_to(30).unwrap();
        assert_eq!(p30.len(), 10);
        assert_eq!(*p30.last().unwrap(), 29);
        assert_eq!(t.primes_up_to(1_000).unwrap(), primes_by_trial(1_000));
        assert!(t.primes_up_to(1_001).is_err());
    }

    #[test]
    fn mertens_prefix_is_running_mu_sum() {
        let t = SieveTable::build(5_000, 512).unwrap();
        assert_eq!(t.mertens_prefix(1).unwrap(), 1);
        for n in 2..=5_000u64 {
            let diff = t.mertens_prefix(n).unwrap() - t.mertens_prefix(n - 1).unwrap();
            assert_eq!(diff, t.moebius(n).unwrap() as i64);
        }
    }

    #[test]
    fn memo_matches_prefix_inside_table() {
        let t = SieveTable::build(100_000, 1 << 14).unwrap();
        let mut memo = MertensMemo::new(&t);
        assert_eq!(memo.eval(1.0).unwrap(), 1);
        assert_eq!(memo.eval(2.0).unwrap(), 0);
        assert_eq!(memo.eval(10.0).unwrap(), -1);
        for n in (1..=100_000u64).step_by(997) {
            assert_eq!(memo.eval(n as f64).unwrap(), t.mertens_prefix(n).unwrap());
        }
        // floor semantics for real arguments
        assert_eq!(memo.eval(10.9).unwrap(), memo.eval(10.0).unwrap());
        assert!(memo.eval(0.5).is_err());
    }

    #[test]
    fn memo_recurrence_beyond_table() {
        let small = SieveTable::build(1_000, 128).unwrap();
        let big = SieveTable::build(50_000, 1 << 13).unwrap();
        let mut memo = MertensMemo::new(&small);
        for n in [1_001u64, 2_500, 10_000, 33_333, 50_000] {
            assert_eq!(
                memo.eval(n as f64).unwrap(),
                big.mertens_prefix(n).unwrap(),
                "M({n})"
            );
        }
    }

    #[test]
    fn direct_segmented_sum_matches_prefix() {
        let t = SieveTable::build(30_000, 4_096).unwrap();
        for limit in [1u64, 2, 9, 100, 12_345, 30_000] {
            assert_eq!(
                mertens_direct_segmented(limit, 1_000).unwrap(),
                t.mertens_prefix(limit).unwrap(),
                "limit {limit}"
            );
        }
    }

    #[test]
    fn mu_cache_round_trip() {
        let t = SieveTable::build(4_321, 256).unwrap();
        let mut buf = Vec::new();
        t.dump_mu(&mut buf).unwrap();
        assert_eq!(&buf[..5], MU_CACHE_MAGIC);
        let loaded = SieveTable::load_mu(&mut buf.as_slice(), 512).unwrap();
        assert_eq!(loaded, t);
    }

    #[test]
    fn mu_cache_rejects_garbage() {
        let mut buf = Vec::new();
        SieveTable::build(64, 8).unwrap().dump_mu(&mut buf).unwrap();
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(SieveTable::load_mu(&mut bad.as_slice(), 8).is_err());
        let mut truncated = buf.clone();
        truncated.truncate(20);
        assert!(SieveTable::load_mu(&mut truncated.as_slice(), 8).is_err());
    }

    #[test]
    fn allocation_failure_is_a_resource_error() {
        // Capacity overflow: try_reserve refuses before touching memory.
        let err = try_vec::<u64>(usize::MAX / 2, 77).unwrap_err();
        match err {
            Error::Resource { limit } => assert_eq!(limit, 77),
            other => panic!("expected resource error, got {other}"),
        }
    }

    #[test]
    fn mu_is_multiplicative_on_coprime_pairs() {
        use proptest::prelude::*;
        fn gcd(mut a: u64, mut b: u64) -> u64 {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        }
        let t = SieveTable::build(250_000, 1 << 14).unwrap();
        proptest!(|(a in 1u64..500, b in 1u64..500)| {
            prop_assume!(gcd(a, b) == 1);
            let lhs = t.moebius(a * b).unwrap() as i32;
            let rhs = t.moebius(a).unwrap() as i32 * t.moebius(b).unwrap() as i32;
            prop_assert_eq!(lhs, rhs, "mu({} * {})", a, b);
        });
    }

    #[test]
    fn integer_sqrt_exact() {
        for n in 0..2_000u64 {
            let r = integer_sqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "sqrt({n})");
        }
        assert_eq!(integer_sqrt(u64::MAX), (1u64 << 32) - 1);
    }
}
