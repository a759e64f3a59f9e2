//! Classical-optics realizations of the truncated sums.
//!
//! Every setup superposes `M` equal-amplitude complex fields whose phases
//! follow `m^k` times a number-over-trial ratio:
//!
//! | setup            | number  | trial  |
//! |------------------|---------|--------|
//! | Mach-Zehnder     | `b L`   | `lambda` |
//! | pulse train      | `nu`    | `1 / tau` |
//! | beats            | `nu0`   | `1 / t` |
//! | Faraday cells    | `b L`   | `1 / B0` |
//!
//! Simulation is double precision. Phases are reduced to cycles in `[0, 1)`
//! before the exponential, from the ratio kept as a [`Quantity`].

mod canonical;
mod quantity;
mod setups;

pub use canonical::{map_to_canonical, sweep, CanonicalMapping, Setup, SweepPoint, SweepVariable};
pub use quantity::Quantity;
pub use setups::{
    beat_reading, faraday_reading, mzi_reading, pulse_train_reading, BeatConfig, FaradayConfig,
    InterferometerConfig, PulseTrainConfig,
};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// What the detector reports for one configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorReading {
    /// `|E|^2`.
    pub raw_intensity: f64,
    /// `|E|` relative to the in-phase maximum, i.e. `|A|` of the matching sum.
    pub normalized_magnitude: f64,
    pub terms: u64,
}

/// Uniform relative amplitude noise `E0 (1 + spread * u)`, `u` in `[-1, 1]`.
///
/// Off unless set on a config. Normalization still assumes ideal amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeJitter {
    pub spread: f64,
    #[serde(default)]
    pub seed: u64,
}

impl AmplitudeJitter {
    fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.spread) {
            return Err(invalid("jitter spread must lie in [0, 1)"));
        }
        Ok(())
    }
}

/// Shared superposition engine: `sum_m a_m exp(2 pi i sign c_m)`.
///
/// `cycles` yields the phase of each contributing term in cycles. Amplitudes
/// are `base_amplitude`, perturbed when `jitter` is set.
pub(crate) fn superpose(
    cycles: impl Iterator<Item = f64>,
    sign: f64,
    base_amplitude: f64,
    jitter: Option<AmplitudeJitter>,
) -> Complex64 {
    let mut rng = jitter.map(|j| (j.spread, ChaCha8Rng::seed_from_u64(j.seed)));
    let mut field = Complex64::new(0.0, 0.0);
    for c in cycles {
        let amplitude = match rng.as_mut() {
            Some((spread, rng)) => base_amplitude * (1.0 + *spread * rng.gen_range(-1.0..=1.0)),
            None => base_amplitude,
        };
        let (sin, cos) = (sign * std::f64::consts::TAU * c).sin_cos();
        field += Complex64::new(amplitude * cos, amplitude * sin);
    }
    field
}

pub(crate) fn reading(field: Complex64, full_scale: f64, terms: u64) -> DetectorReading {
    DetectorReading {
        raw_intensity: field.norm_sqr(),
        normalized_magnitude: field.norm() / full_scale,
        terms,
    }
}

/// `m^k` as a float phase multiplier.
#[inline]
pub(crate) fn index_power(m: u64, k: u32) -> f64 {
    (m as f64).powi(k as i32)
}

pub(crate) fn check_positive(name: &str, q: Quantity) -> Result<()> {
    if !q.is_finite() || !(q.value() > 0.0) {
        return Err(invalid(format!("{name} must be a finite positive value, got {q}")));
    }
    Ok(())
}

pub(crate) fn check_count(name: &str, n: u64) -> Result<()> {
    if n == 0 {
        return Err(invalid(format!("{name} must be at least 1")));
    }
    Ok(())
}

pub(crate) fn check_jitter(jitter: &Option<AmplitudeJitter>) -> Result<()> {
    jitter.as_ref().map_or(Ok(()), AmplitudeJitter::validate)
}

/// Reject phase multipliers that overflow at the largest index.
pub(crate) fn check_phase_range(
    name: &str,
    ratio: Quantity,
    truncation: u64,
    k: u32,
) -> Result<()> {
    if !(index_power(truncation, k) * ratio.numer()).is_finite() {
        return Err(invalid(format!("{name}: phase m^k overflows at m = {truncation}")));
    }
    Ok(())
}
