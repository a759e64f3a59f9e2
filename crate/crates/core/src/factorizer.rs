//! Trial-factor scans, ghost elimination and recursive factorization.
//!
//! A scan evaluates the truncated sum at every trial factor in a range and
//! keeps the candidates whose magnitude reaches the threshold. Candidates are
//! then checked by exact division: divisors become [`Verdict::Factor`], the
//! remaining high-magnitude trials are reported as [`Verdict::Ghost`].

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::sums::{evaluate_sum, term, SumKind, SumSpec, TermSelection};

pub const DEFAULT_THRESHOLD: f64 = 0.75;
pub const DEFAULT_TERM_CAP: u64 = 10_000;
pub const ORACLE_LIMIT: u64 = 1_000_000_000_000;

/// Number of terms to use in the sum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Truncation {
    /// Pick per number with [`choose_truncation`].
    #[default]
    Auto,
    Fixed(u64),
}

impl Truncation {
    pub fn resolve(self, number: u64, kind: SumKind) -> u64 {
        match self {
            Truncation::Auto => choose_truncation(number, kind),
            Truncation::Fixed(m) => m,
        }
    }
}

impl FromStr for Truncation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Truncation::Auto);
        }
        match s.parse::<u64>() {
            Ok(m) if m >= 1 => Ok(Truncation::Fixed(m)),
            _ => Err(domain(format!("terms must be a positive integer or 'auto', got '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanParams {
    pub truncation: Truncation,
    pub kind: SumKind,
    pub selection: TermSelection,
    pub threshold: f64,
    /// Inclusive trial range; `None` means `[2, floor(sqrt N)]`.
    pub trial_range: Option<(u64, u64)>,
}

impl Default for ScanParams {
    fn default() -> Self {
        ScanParams {
            truncation: Truncation::Auto,
            kind: SumKind::Gauss,
            selection: TermSelection::All,
            threshold: DEFAULT_THRESHOLD,
            trial_range: None,
        }
    }
}

impl ScanParams {
    pub fn new(kind: SumKind) -> Self {
        ScanParams {
            kind,
            ..Default::default()
        }
    }

    pub fn with_truncation(mut self, truncation: Truncation) -> Self {
        self.truncation = truncation;
        self
    }

    pub fn with_terms(self, m: u64) -> Self {
        self.with_truncation(Truncation::Fixed(m))
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn with_selection(mut self, selection: TermSelection) -> Self {
        self.selection = selection;
        self
    }

    pub fn with_range(mut self, lo: u64, hi: u64) -> Self {
        self.trial_range = Some((lo, hi));
        self
    }

    pub fn validate(&self) -> Result<()> {
        validate_threshold(self.threshold)?;
        if self.truncation == Truncation::Fixed(0) {
            return Err(domain("truncation M must be >= 1"));
        }
        if let Some((lo, _)) = self.trial_range {
            if lo < 2 {
                return Err(domain("trial range must start at 2 or above"));
            }
        }
        Ok(())
    }

    /// Inclusive trial range for `number`, or `None` when it is empty.
    pub fn range_for(&self, number: u64) -> Result<Option<(u64, u64)>> {
        let (lo, hi) = match self.trial_range {
            Some((lo, hi)) => {
                if hi > number.saturating_sub(1) {
                    return Err(domain(format!(
                        "trial range upper bound {hi} exceeds N - 1 = {}",
                        number - 1
                    )));
                }
                (lo, hi)
            }
            None => (2, number.isqrt()),
        };
        Ok((lo <= hi).then_some((lo, hi)))
    }
}

fn validate_threshold(threshold: f64) -> Result<()> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(domain(format!(
            "threshold must lie strictly between 0 and 1, got {threshold}"
        )));
    }
    Ok(())
}

/// Auto truncation `max(4, ceil(N^(1/4)))`, via an exact integer fourth root.
pub fn choose_truncation(number: u64, _kind: SumKind) -> u64 {
    let n = u128::from(number);
    let mut r = (number as f64).powf(0.25).floor() as u128;
    while r.pow(4) < n {
        r += 1;
    }
    while r > 0 && (r - 1).pow(4) >= n {
        r -= 1;
    }
    (r as u64).max(4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    AboveThreshold,
    BelowThreshold,
}

/// Inclusive cut: a magnitude equal to the threshold is above it.
#[inline]
pub fn classify(magnitude: f64, threshold: f64) -> Classification {
    if magnitude >= threshold {
        Classification::AboveThreshold
    } else {
        Classification::BelowThreshold
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Factor,
    Ghost,
    NonFactor,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Factor => "Factor",
            Verdict::Ghost => "Ghost",
            Verdict::NonFactor => "NonFactor",
        })
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Factor" => Ok(Verdict::Factor),
            "Ghost" => Ok(Verdict::Ghost),
            "NonFactor" => Ok(Verdict::NonFactor),
            _ => Err(domain(format!("unknown verdict '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub trial: u64,
    pub magnitude: f64,
    pub verdict: Verdict,
    /// `N / l` for factors.
    pub complement: Option<u64>,
}

impl ScanRow {
    /// Threshold the magnitude, then settle above-threshold trials by exact
    /// division.
    pub fn judge(number: u64, trial: u64, magnitude: f64, threshold: f64) -> Self {
        let (verdict, complement) = match classify(magnitude, threshold) {
            Classification::BelowThreshold => (Verdict::NonFactor, None),
            Classification::AboveThreshold if number % trial == 0 => {
                (Verdict::Factor, Some(number / trial))
            }
            Classification::AboveThreshold => (Verdict::Ghost, None),
        };
        ScanRow {
            trial,
            magnitude,
            verdict,
            complement,
        }
    }
}

/// One row per trial factor, ascending. Rows are computed in parallel on the
/// current rayon pool; the result does not depend on the pool size.
pub fn scan(number: u64, params: &ScanParams) -> Result<Vec<ScanRow>> {
    if number < 2 {
        return Err(domain("N must be >= 2"));
    }
    params.validate()?;
    let Some((lo, hi)) = params.range_for(number)? else {
        return Ok(Vec::new());
    };
    let m = params.truncation.resolve(number, params.kind);
    let spec = SumSpec::new(number, m, params.kind, params.selection)?;
    (lo..=hi)
        .into_par_iter()
        .map(|l| {
            let value = evaluate_sum(&spec, l)?;
            Ok(ScanRow::judge(number, l, value.magnitude, params.threshold))
        })
        .collect()
}

/// One scan performed while factorizing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanLevel {
    /// Number scanned at this level.
    pub part: u64,
    pub terms: u64,
    pub rows: Vec<ScanRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationResult {
    pub number: u64,
    /// Prime factors in ascending order, repeated by multiplicity.
    pub prime_factors: Vec<u64>,
    pub scan_trace: Vec<ScanLevel>,
}

impl FactorizationResult {
    pub fn terms_used_per_level(&self) -> Vec<u64> {
        self.scan_trace.iter().map(|level| level.terms).collect()
    }

    /// `(prime, multiplicity)` pairs, ascending.
    pub fn multiplicities(&self) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        for &p in &self.prime_factors {
            match out.last_mut() {
                Some((q, count)) if *q == p => *count += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

/// Factorize by repeated scanning.
///
/// Each level scans `[2, floor(sqrt part)]`, peels off the smallest verified
/// factor and queues both pieces. A part with no factor row is prime. The
/// explicit `trial_range` of `params` is ignored.
pub fn factorize(number: u64, params: &ScanParams) -> Result<FactorizationResult> {
    if number < 2 {
        return Err(domain("N must be >= 2"));
    }
    params.validate()?;
    let level_params = ScanParams {
        trial_range: None,
        ..*params
    };
    let mut primes = Vec::new();
    let mut trace = Vec::new();
    let mut pending = vec![number];
    while let Some(part) = pending.pop() {
        let rows = scan(part, &level_params)?;
        let terms = params.truncation.resolve(part, params.kind);
        let smallest = rows
            .iter()
            .find(|row| row.verdict == Verdict::Factor)
            .map(|row| (row.trial, row.complement.expect("factor rows carry a complement")));
        trace.push(ScanLevel { part, terms, rows });
        match smallest {
            Some((factor, complement)) => {
                pending.push(complement);
                pending.push(factor);
            }
            None => primes.push(part),
        }
    }
    primes.sort_unstable();
    Ok(FactorizationResult {
        number,
        prime_factors: primes,
        scan_trace: trace,
    })
}

/// Trial division by 2 and odd integers; ground truth for tests.
pub fn oracle_factorize(number: u64) -> Result<Vec<u64>> {
    if !(2..=ORACLE_LIMIT).contains(&number) {
        return Err(Error::Range(format!(
            "oracle accepts 2 <= N <= {ORACLE_LIMIT}, got {number}"
        )));
    }
    let mut n = number;
    let mut out = Vec::new();
    while n % 2 == 0 {
        out.push(2);
        n /= 2;
    }
    let mut d = 3;
    while d * d <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += 2;
    }
    if n > 1 {
        out.push(n);
    }
    Ok(out)
}

/// Whether `truncation` terms separate every divisor in `[2, floor(sqrt N)]`
/// from every non-divisor at `threshold`.
pub fn is_separated(number: u64, kind: SumKind, threshold: f64, truncation: u64) -> Result<bool> {
    validate_threshold(threshold)?;
    let spec = SumSpec::new(number, truncation, kind, TermSelection::All)?;
    for l in 2..=number.isqrt() {
        let above = classify(evaluate_sum(&spec, l)?.magnitude, threshold)
            == Classification::AboveThreshold;
        if above != (number % l == 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest truncation that separates factors from non-factors, searching up
/// to [`DEFAULT_TERM_CAP`] terms.
pub fn min_discriminating_terms(number: u64, kind: SumKind, threshold: f64) -> Result<u64> {
    min_discriminating_terms_capped(number, kind, threshold, DEFAULT_TERM_CAP)
}

pub fn min_discriminating_terms_capped(
    number: u64,
    kind: SumKind,
    threshold: f64,
    cap: u64,
) -> Result<u64> {
    if number < 4 {
        return Err(domain("N must be >= 4"));
    }
    validate_threshold(threshold)?;
    if cap == 0 {
        return Err(domain("term cap must be >= 1"));
    }
    // Divisors always sum to exactly one, so only non-divisors are tracked.
    let mut open: Vec<(u64, Complex64)> = (2..=number.isqrt())
        .filter(|l| number % l != 0)
        .map(|l| (l, Complex64::new(0.0, 0.0)))
        .collect();
    for m in 1..=cap {
        let mut separated = true;
        for (l, total) in open.iter_mut() {
            *total += term(kind, number, *l, m);
            if (*total / m as f64).norm() >= threshold {
                separated = false;
            }
        }
        if separated {
            return Ok(m);
        }
    }
    let trial = open
        .iter()
        .find(|(_, total)| (*total / cap as f64).norm() >= threshold)
        .map(|(l, _)| *l)
        .unwrap_or(0);
    Err(Error::NotSeparated { trial, cap })
}
