//! Truncated exponential sums
//!
//! ```text
//! A(l) = 1/M' * sum_{selected m <= M} exp(-2 pi i m^k N / l)
//! ```
//!
//! Phases are reduced with exact integer arithmetic: only the residue
//! `m^k * N mod l` ever reaches floating point, so a divisor `l | N` yields a
//! sum of exact ones. [`evaluate_sum_float`] is an independent floating-point
//! route kept for cross-validation.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest integer below which every `f64` integer is exact.
pub const EXACT_FLOAT_LIMIT: f64 = 9_007_199_254_740_992.0;

/// Phase law of the sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SumKind {
    Fourier,
    Gauss,
    Kummer,
    PowerK(u32),
    /// Exponent equal to the term index, `m^m`.
    SelfExponential,
}

impl SumKind {
    /// Canonical kind for a fixed exponent; 1, 2 and 3 map to the named sums.
    pub fn from_exponent(k: u32) -> Result<Self> {
        match k {
            0 => Err(domain("exponent k must be at least 1")),
            1 => Ok(SumKind::Fourier),
            2 => Ok(SumKind::Gauss),
            3 => Ok(SumKind::Kummer),
            k => Ok(SumKind::PowerK(k)),
        }
    }

    /// Fixed exponent, or `None` for the self-exponential law.
    pub fn exponent(self) -> Option<u32> {
        match self {
            SumKind::Fourier => Some(1),
            SumKind::Gauss => Some(2),
            SumKind::Kummer => Some(3),
            SumKind::PowerK(k) => Some(k),
            SumKind::SelfExponential => None,
        }
    }

    /// Exponent applied to term `m`.
    #[inline]
    pub fn exponent_for(self, m: u64) -> u64 {
        match self.exponent() {
            Some(k) => u64::from(k),
            None => m,
        }
    }

    fn validate(self) -> Result<()> {
        if self == SumKind::PowerK(0) {
            return Err(domain("powerk exponent must be at least 1"));
        }
        Ok(())
    }
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumKind::Fourier => f.write_str("fourier"),
            SumKind::Gauss => f.write_str("gauss"),
            SumKind::Kummer => f.write_str("kummer"),
            SumKind::PowerK(k) => write!(f, "powerk:{k}"),
            SumKind::SelfExponential => f.write_str("selfexp"),
        }
    }
}

impl FromStr for SumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "fourier" => Ok(SumKind::Fourier),
            "gauss" => Ok(SumKind::Gauss),
            "kummer" => Ok(SumKind::Kummer),
            "selfexp" => Ok(SumKind::SelfExponential),
            other => {
                let k = other
                    .strip_prefix("powerk:")
                    .and_then(|k| k.parse::<u32>().ok())
                    .ok_or_else(|| domain(format!("unknown sum kind '{s}'")))?;
                if k == 0 {
                    return Err(domain("powerk exponent must be at least 1"));
                }
                Ok(SumKind::PowerK(k))
            }
        }
    }
}

/// Which indices `m` enter the sum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TermSelection {
    #[default]
    #[serde(alias = "all")]
    All,
    /// `m` in 1, 3, 5, ...
    #[serde(alias = "odd")]
    OddOnly,
}

impl TermSelection {
    #[inline]
    pub fn includes(self, m: u64) -> bool {
        match self {
            TermSelection::All => true,
            TermSelection::OddOnly => m % 2 == 1,
        }
    }

    /// Number of selected indices in `1..=truncation`.
    pub fn count(self, truncation: u64) -> u64 {
        match self {
            TermSelection::All => truncation,
            TermSelection::OddOnly => truncation.div_ceil(2),
        }
    }

    /// Selected indices in ascending order.
    pub fn indices(self, truncation: u64) -> impl Iterator<Item = u64> {
        let step = match self {
            TermSelection::All => 1,
            TermSelection::OddOnly => 2,
        };
        (1..=truncation).step_by(step)
    }
}

impl fmt::Display for TermSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermSelection::All => f.write_str("all"),
            TermSelection::OddOnly => f.write_str("odd"),
        }
    }
}

impl FromStr for TermSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "all" => Ok(TermSelection::All),
            "odd" | "oddonly" => Ok(TermSelection::OddOnly),
            _ => Err(domain(format!("unknown term selection '{s}'"))),
        }
    }
}

/// One truncated-sum instance: number, term count, phase law, selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumSpec {
    number: u64,
    truncation: u64,
    kind: SumKind,
    selection: TermSelection,
}

impl SumSpec {
    pub fn new(
        number: u64,
        truncation: u64,
        kind: SumKind,
        selection: TermSelection,
    ) -> Result<Self> {
        if number < 2 {
            return Err(domain("N must be >= 2"));
        }
        if truncation < 1 {
            return Err(domain("truncation M must be >= 1"));
        }
        kind.validate()?;
        Ok(Self {
            number,
            truncation,
            kind,
            selection,
        })
    }

    pub fn number(&self) -> u64 {
        self.number
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn kind(&self) -> SumKind {
        self.kind
    }

    pub fn selection(&self) -> TermSelection {
        self.selection
    }

    /// Number of selected terms `M'`.
    pub fn terms_used(&self) -> u64 {
        self.selection.count(self.truncation)
    }
}

/// Normalized value of a truncated sum at one trial factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumValue {
    pub value: Complex64,
    pub magnitude: f64,
    pub terms_used: u64,
}

impl SumValue {
    fn from_total(total: Complex64, terms_used: u64) -> Self {
        let value = total / terms_used as f64;
        SumValue {
            value,
            magnitude: value.norm(),
            terms_used,
        }
    }
}

/// `base^exp mod modulus` by square-and-multiply in 128-bit intermediates.
pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = u128::from(modulus);
    let mut acc: u128 = 1;
    let mut b = u128::from(base) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Integer residue `m^k * N mod l`.
#[inline]
pub fn phase_residue(m: u64, k: u64, number: u64, trial: u64) -> u64 {
    let power = u128::from(pow_mod(m, k, trial));
    (power * u128::from(number % trial) % u128::from(trial)) as u64
}

/// Fractional part of `m^k N / l`, in `[0, 1)`.
pub fn phase_fraction(m: u64, k: u64, number: u64, trial: u64) -> Result<f64> {
    if trial == 0 {
        return Err(domain("trial factor l must be >= 1"));
    }
    Ok(phase_residue(m, k, number, trial) as f64 / trial as f64)
}

/// `exp(-2 pi i r / l)` for an exact residue `r < l`.
#[inline]
pub(crate) fn unit_term(residue: u64, trial: u64) -> Complex64 {
    if residue == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let angle = -std::f64::consts::TAU * (residue as f64 / trial as f64);
    let (sin, cos) = angle.sin_cos();
    Complex64::new(cos, sin)
}

/// Term `m` of the sum for `(N, l)` under `kind`.
#[inline]
pub(crate) fn term(kind: SumKind, number: u64, trial: u64, m: u64) -> Complex64 {
    unit_term(phase_residue(m, kind.exponent_for(m), number, trial), trial)
}

/// Evaluate the normalized truncated sum at trial factor `trial`.
pub fn evaluate_sum(spec: &SumSpec, trial: u64) -> Result<SumValue> {
    if trial == 0 {
        return Err(domain("trial factor l must be >= 1"));
    }
    let terms_used = spec.terms_used();
    if terms_used == 0 {
        return Err(domain("no terms selected"));
    }
    let total: Complex64 = spec
        .selection
        .indices(spec.truncation)
        .map(|m| term(spec.kind, spec.number, trial, m))
        .sum();
    Ok(SumValue::from_total(total, terms_used))
}

/// Floating-point reference path: `m^k N` is formed as an `f64` and reduced
/// modulo `l` in floating point, with no integer modular arithmetic.
///
/// Fails with [`Error::Range`] once `m^k N` leaves the exactly representable
/// integer range.
pub fn evaluate_sum_float(spec: &SumSpec, trial: u64) -> Result<SumValue> {
    if trial == 0 {
        return Err(domain("trial factor l must be >= 1"));
    }
    let terms_used = spec.terms_used();
    if terms_used == 0 {
        return Err(domain("no terms selected"));
    }
    let number = spec.number as f64;
    let l = trial as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for m in spec.selection.indices(spec.truncation) {
        let k = spec.kind.exponent_for(m);
        let power = float_power(m as f64, k)
            .filter(|p| p * number <= EXACT_FLOAT_LIMIT)
            .ok_or_else(|| {
                Error::Range(format!(
                    "m^k * N exceeds the exact float range at m = {m}; use the exact path"
                ))
            })?;
        let cycles = (power * number) % l / l;
        total += Complex64::from_polar(1.0, -std::f64::consts::TAU * cycles);
    }
    Ok(SumValue::from_total(total, terms_used))
}

fn float_power(base: f64, exp: u64) -> Option<f64> {
    let mut acc = 1.0_f64;
    for _ in 0..exp {
        acc *= base;
        if acc > EXACT_FLOAT_LIMIT {
            return None;
        }
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u64, m: u64, kind: SumKind) -> SumSpec {
        SumSpec::new(n, m, kind, TermSelection::All).unwrap()
    }

    #[test]
    fn phase_fraction_examples() {
        assert_eq!(phase_fraction(2, 2, 15, 4).unwrap(), 0.0);
        assert_eq!(phase_fraction(3, 3, 7, 5).unwrap(), 4.0 / 5.0);
        assert_eq!(phase_fraction(3, 3, 10, 7).unwrap(), 4.0 / 7.0);
        assert!(matches!(phase_fraction(1, 1, 5, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn pow_mod_matches_naive() {
        for base in 0..20u64 {
            for exp in 0..12u64 {
                for modulus in 1..30u64 {
                    let naive = (0..exp).fold(1u64 % modulus, |a, _| a * base % modulus);
                    assert_eq!(pow_mod(base, exp, modulus), naive);
                }
            }
        }
        assert_eq!(pow_mod(u64::MAX - 1, u64::MAX, u64::MAX), u64::MAX - 1);
    }

    #[test]
    fn divisor_gives_exact_unity() {
        let v = evaluate_sum(&spec(15, 4, SumKind::Gauss), 3).unwrap();
        assert_eq!(v.value, Complex64::new(1.0, 0.0));
        assert_eq!(v.magnitude, 1.0);
        assert_eq!(v.terms_used, 4);
    }

    #[test]
    fn fourier_two_terms_cancel() {
        let v = evaluate_sum(&spec(15, 2, SumKind::Fourier), 2).unwrap();
        assert!(v.magnitude < 1e-15);
    }

    #[test]
    fn gauss_ghost_at_four() {
        // terms -i, 1, -i, 1
        let v = evaluate_sum(&spec(21, 4, SumKind::Gauss), 4).unwrap();
        assert!((v.magnitude - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((v.value.re - 0.5).abs() < 1e-15);
        assert!((v.value.im + 0.5).abs() < 1e-15);
    }

    #[test]
    fn odd_only_divisor() {
        for kind in [SumKind::Fourier, SumKind::Kummer, SumKind::SelfExponential] {
            let s = SumSpec::new(42, 7, kind, TermSelection::OddOnly).unwrap();
            let v = evaluate_sum(&s, 6).unwrap();
            assert_eq!(v.magnitude, 1.0);
            assert_eq!(v.terms_used, 4);
        }
    }

    #[test]
    fn trial_one_is_trivial() {
        let v = evaluate_sum(&spec(17, 9, SumKind::Kummer), 1).unwrap();
        assert_eq!(v.magnitude, 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SumSpec::new(1, 4, SumKind::Gauss, TermSelection::All).is_err());
        assert!(SumSpec::new(10, 0, SumKind::Gauss, TermSelection::All).is_err());
        assert!(SumSpec::new(10, 4, SumKind::PowerK(0), TermSelection::All).is_err());
        assert!(evaluate_sum(&spec(15, 4, SumKind::Gauss), 0).is_err());
    }

    #[test]
    fn float_path_examples() {
        let v = evaluate_sum_float(&spec(15, 4, SumKind::Gauss), 3).unwrap();
        assert!((v.magnitude - 1.0).abs() < 1e-9);
        let v = evaluate_sum_float(&spec(21, 4, SumKind::Gauss), 4).unwrap();
        assert!((v.magnitude - 0.707_106_8).abs() < 1e-7);
        let err = evaluate_sum_float(&spec(1_000_000_000_000_000, 40, SumKind::Kummer), 7);
        assert!(matches!(err, Err(Error::Range(_))));
    }

    #[test]
    fn self_exponential_overflows_float_path() {
        let s = spec(1000, 30, SumKind::SelfExponential);
        assert!(matches!(evaluate_sum_float(&s, 7), Err(Error::Range(_))));
        assert!(evaluate_sum(&s, 7).is_ok());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("gauss".parse::<SumKind>().unwrap(), SumKind::Gauss);
        assert_eq!("powerk:5".parse::<SumKind>().unwrap(), SumKind::PowerK(5));
        assert_eq!("selfexp".parse::<SumKind>().unwrap(), SumKind::SelfExponential);
        assert!("powerk:0".parse::<SumKind>().is_err());
        assert!("cubic".parse::<SumKind>().is_err());
        for kind in [SumKind::Fourier, SumKind::PowerK(7), SumKind::SelfExponential] {
            assert_eq!(kind.to_string().parse::<SumKind>().unwrap(), kind);
        }
        assert_eq!(SumKind::from_exponent(2).unwrap(), SumKind::Gauss);
        assert_eq!(SumKind::from_exponent(4).unwrap(), SumKind::PowerK(4));
    }

    #[test]
    fn odd_selection_counts() {
        assert_eq!(TermSelection::OddOnly.count(1), 1);
        assert_eq!(TermSelection::OddOnly.count(7), 4);
        assert_eq!(TermSelection::OddOnly.count(8), 4);
        let idx: Vec<u64> = TermSelection::OddOnly.indices(8).collect();
        assert_eq!(idx, vec![1, 3, 5, 7]);
    }
}
