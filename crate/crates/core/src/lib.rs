//! Integer factorization with truncated Fourier, Gauss, Kummer and
//! exponential sums, plus simulators for the optical setups that realize them.
//!
//! - [`sums`]: exact evaluation of `A_N^(M)(l)` and a floating-point check path.
//! - [`factorizer`]: trial scans, ghost rejection, recursive factorization and
//!   the minimum-term discrimination benchmark.
//! - [`optics`]: Mach-Zehnder, pulse-train, beat and Faraday detectors and
//!   their reduction to the canonical sum.

pub mod error;
pub mod factorizer;
pub mod optics;
pub mod sums;

pub use error::{Error, Result};
pub use factorizer::{
    choose_truncation, classify, factorize, is_separated, min_discriminating_terms,
    min_discriminating_terms_capped, oracle_factorize, scan, Classification, FactorizationResult,
    ScanLevel, ScanParams, ScanRow, Truncation, Verdict, DEFAULT_THRESHOLD,
};
pub use num_complex::Complex64;
pub use sums::{
    evaluate_sum, evaluate_sum_float, phase_fraction, SumKind, SumSpec, SumValue, TermSelection,
};
