//! Generalized harmonic and Möbius-weighted power sums in two arithmetic
//! modes: arbitrary-precision rationals for exact integer exponents, and
//! complex floating point otherwise.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::sieve::SieveTable;

/// Euler's constant, stored to 20 significant digits (f64 keeps ~17).
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.57721566490153286061;

/// Exact mode accepts integer exponents s with |s| <= 4. Rational
/// magnitudes explode quickly in both s and x beyond that, and every
/// exactly-checkable identity here needs at most s in [-1, 2].
pub const EXACT_EXPONENT_MAX: i32 = 4;

/// The exponent of a power sum: an exact small integer or a complex float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerParam {
    Exact(i32),
    Float(Complex64),
}

impl PowerParam {
    pub fn exact(s: i32) -> Result<Self> {
        if s.abs() > EXACT_EXPONENT_MAX {
            return Err(Error::ExactExponent {
                got: s.to_string(),
                max: EXACT_EXPONENT_MAX,
            });
        }
        Ok(PowerParam::Exact(s))
    }

    pub fn float_real(s: f64) -> Self {
        PowerParam::Float(Complex64::new(s, 0.0))
    }

    pub fn float(s: Complex64) -> Self {
        PowerParam::Float(s)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, PowerParam::Exact(_))
    }

    pub fn mode_label(&self) -> &'static str {
        match self {
            PowerParam::Exact(_) => "exact",
            PowerParam::Float(_) => "float",
        }
    }

    /// The exponent as a complex number regardless of mode.
    pub fn as_complex(&self) -> Complex64 {
        match self {
            PowerParam::Exact(s) => Complex64::new(*s as f64, 0.0),
            PowerParam::Float(s) => *s,
        }
    }

    /// Real part of the exponent.
    pub fn re(&self) -> f64 {
        self.as_complex().re
    }
}

/// A sum in one of the two arithmetic modes. Exact-mode arithmetic never
/// rounds; any operation mixing the modes coerces to float.
#[derive(Debug, Clone, PartialEq)]
pub enum SumValue {
    Exact(BigRational),
    Float(Complex64),
}

impl SumValue {
    pub fn exact_int(n: i64) -> Self {
        SumValue::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn exact_ratio(num: i64, den: u64) -> Self {
        SumValue::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn float_real(v: f64) -> Self {
        SumValue::Float(Complex64::new(v, 0.0))
    }

    /// Zero in the same mode as the exponent parameter.
    pub fn zero_for(s: &PowerParam) -> Self {
        match s {
            PowerParam::Exact(_) => SumValue::Exact(BigRational::zero()),
            PowerParam::Float(_) => SumValue::Float(Complex64::zero()),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SumValue::Exact(_))
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, SumValue::Exact(r) if r.is_zero())
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            SumValue::Exact(r) => Some(r),
            SumValue::Float(_) => None,
        }
    }

    pub fn approx_c64(&self) -> Complex64 {
        match self {
            SumValue::Exact(r) => Complex64::new(ratio_to_f64(r), 0.0),
            SumValue::Float(c) => *c,
        }
    }

    pub fn approx_f64(&self) -> f64 {
        self.approx_c64().re
    }

    /// Absolute value: exact rational magnitude, or the complex norm.
    pub fn abs(&self) -> SumValue {
        match self {
            SumValue::Exact(r) => SumValue::Exact(r.abs()),
            SumValue::Float(c) => SumValue::Float(Complex64::new(c.norm(), 0.0)),
        }
    }
}

impl Default for SumValue {
    fn default() -> Self {
        SumValue::Exact(BigRational::zero())
    }
}

macro_rules! sum_value_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait for SumValue {
            type Output = SumValue;
            fn $method(self, rhs: SumValue) -> SumValue {
                match (self, rhs) {
                    (SumValue::Exact(a), SumValue::Exact(b)) => SumValue::Exact(a $op b),
                    (a, b) => SumValue::Float(a.approx_c64() $op b.approx_c64()),
                }
            }
        }
    };
}

sum_value_binop!(Add, add, +);
sum_value_binop!(Sub, sub, -);
sum_value_binop!(Mul, mul, *);

impl std::ops::Neg for SumValue {
    type Output = SumValue;
    fn neg(self) -> SumValue {
        match self {
            SumValue::Exact(r) => SumValue::Exact(-r),
            SumValue::Float(c) => SumValue::Float(-c),
        }
    }
}

impl std::ops::AddAssign for SumValue {
    fn add_assign(&mut self, rhs: SumValue) {
        let lhs = std::mem::take(self);
        *self = lhs + rhs;
    }
}

impl std::ops::SubAssign for SumValue {
    fn sub_assign(&mut self, rhs: SumValue) {
        let lhs = std::mem::take(self);
        *self = lhs - rhs;
    }
}

/// Converts a possibly enormous rational to f64 by an 80-bit integer
/// quotient plus a power-of-two scale. `BigRational::to_f64` overflows when
/// numerator and denominator individually exceed f64 range even though the
/// ratio itself is moderate.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let neg = r.numer().is_negative();
    let a = r.numer().magnitude();
    let b = r.denom().magnitude();
    let shift: i64 = 80 - (a.bits() as i64 - b.bits() as i64);
    let q = if shift >= 0 {
        (a << shift as u64) / b
    } else {
        a / (b << (-shift) as u64)
    };
    let qf = q.to_f64().unwrap_or(f64::INFINITY);
    let scale = 2f64.powi((-shift).clamp(-2_000, 2_000) as i32);
    let v = qf * scale;
    if neg {
        -v
    } else {
        v
    }
}

/// k^{-s} as an exact rational; s is a small integer, k >= 1.
pub(crate) fn term_exact(k: u64, s: i32) -> BigRational {
    if s == 0 {
        return BigRational::one();
    }
    if s > 0 {
        BigRational::new(BigInt::one(), BigInt::from(k).pow(s as u32))
    } else {
        BigRational::from_integer(BigInt::from(k).pow((-s) as u32))
    }
}

/// k^{-s} in float mode. k >= 1, so the real positive logarithm is
/// unambiguous for complex s.
pub(crate) fn term_float(k: u64, s: Complex64) -> Complex64 {
    if s.im == 0.0 {
        let kf = k as f64;
        let re = s.re;
        let v = if re == 0.0 {
            1.0
        } else if re == 1.0 {
            1.0 / kf
        } else if re == 2.0 {
            1.0 / (kf * kf)
        } else if re.fract() == 0.0 && re.abs() <= 32.0 {
            kf.powi(-re as i32)
        } else {
            kf.powf(-re)
        };
        Complex64::new(v, 0.0)
    } else {
        (-s * kf_ln(k)).exp()
    }
}

#[inline]
fn kf_ln(k: u64) -> f64 {
    (k as f64).ln()
}

/// Exact sum of weight(k) * k^{-s} over lo..=hi by divide and conquer, so
/// the rational reductions stay balanced instead of snowballing term by
/// term.
fn sum_exact_dc(lo: u64, hi: u64, s: i32, weight: &dyn Fn(u64) -> i8) -> BigRational {
    if hi < lo {
        return BigRational::zero();
    }
    if hi - lo < 32 {
        let mut acc = BigRational::zero();
        for k in lo..=hi {
            match weight(k) {
                0 => {}
                1 => acc += term_exact(k, s),
                -1 => acc -= term_exact(k, s),
                w => acc += BigRational::from_integer(BigInt::from(w)) * term_exact(k, s),
            }
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    sum_exact_dc(lo, mid, s, weight) + sum_exact_dc(mid + 1, hi, s, weight)
}

fn float_sum(n: u64, s: Complex64, weight: impl Fn(u64) -> f64) -> Complex64 {
    let mut acc = Complex64::zero();
    for k in 1..=n {
        let w = weight(k);
        if w != 0.0 {
            acc += term_float(k, s) * w;
        }
    }
    acc
}

fn floor_arg(x: f64, what: &'static str) -> Result<u64> {
    if !(x >= 0.0) {
        return Err(Error::Domain {
            what,
            requirement: "x >= 0",
            got: x.to_string(),
        });
    }
    Ok(x as u64)
}

/// H_x(s) = sum_{k=1..floor(x)} k^{-s}; x < 1 gives the empty sum.
pub fn harmonic_power_sum(x: f64, s: &PowerParam) -> Result<SumValue> {
    let n = floor_arg(x, "harmonic_power_sum")?;
    Ok(match *s {
        PowerParam::Exact(si) => SumValue::Exact(sum_exact_dc(1, n, si, &|_| 1)),
        PowerParam::Float(sc) => SumValue::Float(float_sum(n, sc, |_| 1.0)),
    })
}

/// M_x(s) = sum_{k=1..floor(x)} mu(k) k^{-s}.
pub fn oscillatory_power_sum(x: f64, s: &PowerParam, table: &SieveTable) -> Result<SumValue> {
    let n = floor_arg(x, "oscillatory_power_sum")?;
    if n > table.limit() {
        return Err(Error::OutOfRange {
            n,
            limit: table.limit(),
        });
    }
    Ok(match *s {
        PowerParam::Exact(si) => SumValue::Exact(sum_exact_dc(1, n, si, &|k| table.mu_at(k))),
        PowerParam::Float(sc) => SumValue::Float(float_sum(n, sc, |k| table.mu_at(k) as f64)),
    })
}

/// Truncated expansion of the ordinary harmonic number at floor(y):
/// log n + gamma, then the 1/(2n), -1/(12n^2), 1/(120n^4) corrections.
pub fn harmonic_asymptotic(y: f64, order: u8) -> Result<f64> {
    if !(y >= 1.0) {
        return Err(Error::Domain {
            what: "harmonic_asymptotic",
            requirement: "y >= 1",
            got: y.to_string(),
        });
    }
    if order > 3 {
        return Err(Error::Domain {
            what: "harmonic_asymptotic",
            requirement: "order in 0..=3",
            got: order.to_string(),
        });
    }
    let n = (y as u64) as f64;
    let mut v = n.ln() + EULER_GAMMA;
    if order >= 1 {
        v += 1.0 / (2.0 * n);
    }
    if order >= 2 {
        v -= 1.0 / (12.0 * n * n);
    }
    if order >= 3 {
        v += 1.0 / (120.0 * n * n * n * n);
    }
    Ok(v)
}

/// One maximal interval of k on which floor(x/k) is constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FloorBlock {
    pub quotient: u64,
    pub k_lo: u64,
    pub k_hi: u64,
}

/// Partition of k in [1, floor(x)] into maximal intervals of constant
/// floor(x/k), ascending in k. Empty for x < 1.
pub fn floor_quotient_blocks(x: f64) -> Vec<FloorBlock> {
    let mut out = Vec::new();
    if !(x >= 1.0) {
        return out;
    }
    let n = x as u64;
    for_each_floor_block(n, |q, a, b| {
        out.push(FloorBlock {
            quotient: q,
            k_lo: a,
            k_hi: b,
        })
    });
    out
}

/// Closure form of the block walk, for hot paths that should not allocate.
#[inline]
pub(crate) fn for_each_floor_block(n: u64, mut f: impl FnMut(u64, u64, u64)) {
    let mut k = 1u64;
    while k <= n {
        let q = n / k;
        let k_hi = n / q;
        f(q, k, k_hi);
        k = k_hi + 1;
    }
}
