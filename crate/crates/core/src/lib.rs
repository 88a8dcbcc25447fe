//! Sieve-backed evaluation and verification of harmonic and
//! Möbius-weighted sum identities.
//!
//! The crate builds multiplicative-function tables ([`SieveTable`]),
//! evaluates generalized harmonic numbers `H_x(s) = sum k^{-s}` and their
//! oscillatory counterparts `M_x(s) = sum mu(k) k^{-s}` in exact-rational
//! or complex-float arithmetic, and checks every finite sum identity that
//! ties them together: Möbius inversion pairs, recursive sieve expansions,
//! Euler partial products against zeta, and the regular/oscillatory
//! decomposition of Chebyshev's psi compared to a zero-sum from ingested
//! tables of zeta zeros.
//!
//! Identities that are exact are checked to equality in rational
//! arithmetic; asymptotic statements are reported as residuals with
//! documented tolerances (see [`tolerances`]).

// Argument guards are written `!(x >= 1.0)` so that NaN fails the guard.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod euler;
pub mod expansion;
pub mod format;
pub mod identity;
pub mod power;
pub mod psi;
pub mod sieve;
pub mod tolerances;

pub use error::{Error, Result};
pub use identity::IdentityReport;
pub use power::{PowerParam, SumValue};
pub use sieve::{MertensMemo, SieveTable};
