use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    beat_reading, faraday_reading, mzi_reading, pulse_train_reading, BeatConfig, DetectorReading,
    FaradayConfig, InterferometerConfig, PulseTrainConfig, Quantity,
};
use crate::error::{domain, Error, Result};
use crate::sums::{SumKind, SumSpec, TermSelection};

/// Any of the four optical setups, with the detection time for beats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Setup {
    Interferometer(InterferometerConfig),
    PulseTrain(PulseTrainConfig),
    Beat {
        config: BeatConfig,
        detection_time: Quantity,
    },
    Faraday(FaradayConfig),
}

impl Setup {
    pub fn name(&self) -> &'static str {
        match self {
            Setup::Interferometer(_) => "mzi",
            Setup::PulseTrain(_) => "pulses",
            Setup::Beat { .. } => "beats",
            Setup::Faraday(_) => "faraday",
        }
    }

    pub fn reading(&self) -> Result<DetectorReading> {
        match self {
            Setup::Interferometer(c) => mzi_reading(c),
            Setup::PulseTrain(c) => pulse_train_reading(c),
            Setup::Beat {
                config,
                detection_time,
            } => beat_reading(config, *detection_time),
            Setup::Faraday(c) => faraday_reading(c),
        }
    }

    /// The parameter that realizes the trial factor in this setup.
    pub fn sweep_variable(&self) -> SweepVariable {
        match self {
            Setup::Interferometer(_) => SweepVariable::Wavelength,
            Setup::PulseTrain(_) => SweepVariable::UnitDelay,
            Setup::Beat { .. } => SweepVariable::DetectionTime,
            Setup::Faraday(_) => SweepVariable::BaseField,
        }
    }

    /// Copy of the setup tuned so that its canonical trial equals `trial`.
    fn at_trial(&self, trial: u64) -> Setup {
        match self {
            Setup::Interferometer(c) => Setup::Interferometer(InterferometerConfig {
                wavelength: c.wavelength_unit * trial as f64,
                ..c.clone()
            }),
            Setup::PulseTrain(c) => Setup::PulseTrain(PulseTrainConfig {
                unit_delay: Quantity::reciprocal_of(trial),
                ..c.clone()
            }),
            Setup::Beat { config, .. } => Setup::Beat {
                config: config.clone(),
                detection_time: Quantity::reciprocal_of(trial),
            },
            Setup::Faraday(c) => Setup::Faraday(FaradayConfig {
                base_field: Quantity::reciprocal_of(trial),
                ..c.clone()
            }),
        }
    }
}

/// Reduction of a setup to `(N, l, M, k)` of the truncated sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalMapping {
    pub effective_number: Quantity,
    pub effective_trial: Quantity,
    /// `effective_number / effective_trial`, the `N / l` of the sum.
    pub ratio: Quantity,
    pub truncation: u64,
    pub kind: SumKind,
    pub selection: TermSelection,
}

impl CanonicalMapping {
    /// Integer `(N, l)` when both sides are integral within `tol`.
    pub fn integer_pair(&self, tol: f64) -> Option<(u64, u64)> {
        let n = self.effective_number.as_integer(tol)?;
        let l = self.effective_trial.as_integer(tol)?;
        (n >= 2 && l >= 1).then_some((n, l))
    }

    /// Matching sum spec and trial factor, when the mapping is integral.
    pub fn sum_spec(&self, tol: f64) -> Option<(SumSpec, u64)> {
        let (n, l) = self.integer_pair(tol)?;
        let spec = SumSpec::new(n, self.truncation, self.kind, self.selection).ok()?;
        Some((spec, l))
    }
}

/// MZI `(bL, lambda)` in wavelength-grid units; pulses `(nu, 1/tau)`;
/// beats `(nu0, 1/t)`; Faraday `(bL, 1/B0)`.
pub fn map_to_canonical(setup: &Setup) -> Result<CanonicalMapping> {
    let (number, trial, truncation, exponent, selection) = match setup {
        Setup::Interferometer(c) => {
            let unit = c.wavelength_unit;
            (
                c.index_scale * c.arm_length / unit,
                c.wavelength / unit,
                c.arm_count,
                c.exponent,
                TermSelection::All,
            )
        }
        Setup::PulseTrain(c) => (
            c.optical_frequency,
            c.unit_delay.recip(),
            c.pulse_count,
            c.exponent,
            TermSelection::All,
        ),
        Setup::Beat {
            config,
            detection_time,
        } => (
            config.base_frequency,
            detection_time.recip(),
            config.mode_count,
            config.exponent,
            config.selection,
        ),
        Setup::Faraday(c) => (
            c.verdet_scale * c.path_length,
            c.base_field.recip(),
            c.path_count,
            c.exponent,
            TermSelection::All,
        ),
    };
    let trial_value = trial.value();
    if !(trial_value.is_finite() && trial_value > 0.0) {
        return Err(domain(format!("{}: trial parameter must be non-zero", setup.name())));
    }
    Ok(CanonicalMapping {
        effective_number: number,
        effective_trial: trial,
        ratio: number / trial,
        truncation,
        kind: SumKind::from_exponent(exponent)?,
        selection,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SweepVariable {
    Wavelength,
    UnitDelay,
    DetectionTime,
    BaseField,
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVariable::Wavelength => "wavelength",
            SweepVariable::UnitDelay => "unit_delay",
            SweepVariable::DetectionTime => "detection_time",
            SweepVariable::BaseField => "base_field",
        })
    }
}

impl FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wavelength" => Ok(SweepVariable::Wavelength),
            "unit_delay" => Ok(SweepVariable::UnitDelay),
            "detection_time" => Ok(SweepVariable::DetectionTime),
            "base_field" => Ok(SweepVariable::BaseField),
            _ => Err(domain(format!("unknown sweep variable '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub trial: u64,
    pub normalized_magnitude: f64,
}

/// Read the detector at each trial integer `l`.
///
/// The swept parameter is set so the canonical trial equals `l`: wavelength
/// `l` grid units, or `tau`, `t`, `B0` equal to `1/l`. Output follows input
/// order.
pub fn sweep(setup: &Setup, variable: SweepVariable, trials: &[u64]) -> Result<Vec<SweepPoint>> {
    if variable != setup.sweep_variable() {
        return Err(domain(format!(
            "cannot sweep {variable} on a {} setup (expected {})",
            setup.name(),
            setup.sweep_variable()
        )));
    }
    if trials.is_empty() {
        return Err(domain("sweep needs at least one trial"));
    }
    if trials.contains(&0) {
        return Err(domain("trial values must be positive"));
    }
    trials
        .par_iter()
        .map(|&trial| {
            let reading = setup.at_trial(trial).reading()?;
            Ok(SweepPoint {
                trial,
                normalized_magnitude: reading.normalized_magnitude,
            })
        })
        .collect()
}
