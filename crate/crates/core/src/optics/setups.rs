use serde::{Deserialize, Serialize};

use super::{
    check_count, check_jitter, check_phase_range, check_positive, index_power, reading, superpose,
    AmplitudeJitter, DetectorReading, Quantity,
};
use crate::error::{invalid, Result};
use crate::sums::TermSelection;

fn one() -> f64 {
    1.0
}

fn micrometre() -> Quantity {
    Quantity::reciprocal_of(1_000_000)
}

/// Multi-arm Mach-Zehnder interferometer; arm `m` has refractive index
/// `n_m = a + b m^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterferometerConfig {
    pub arm_count: u64,
    /// Metres.
    pub arm_length: Quantity,
    /// Vacuum wavelength, metres.
    pub wavelength: Quantity,
    #[serde(default)]
    pub index_offset: Quantity,
    pub index_scale: Quantity,
    pub exponent: u32,
    #[serde(default = "one")]
    pub base_amplitude: f64,
    /// Grid in which `b L` counts as the number to factor. Defaults to 1 um.
    #[serde(default = "micrometre")]
    pub wavelength_unit: Quantity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jitter: Option<AmplitudeJitter>,
}

impl InterferometerConfig {
    pub fn new(
        arm_count: u64,
        arm_length: impl Into<Quantity>,
        wavelength: impl Into<Quantity>,
        index_scale: impl Into<Quantity>,
        exponent: u32,
    ) -> Self {
        InterferometerConfig {
            arm_count,
            arm_length: arm_length.into(),
            wavelength: wavelength.into(),
            index_offset: Quantity::ONE,
            index_scale: index_scale.into(),
            exponent,
            base_amplitude: 1.0,
            wavelength_unit: micrometre(),
            jitter: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_count("arm_count", self.arm_count)?;
        check_count("exponent", u64::from(self.exponent))?;
        check_positive("arm_length", self.arm_length)?;
        check_positive("wavelength", self.wavelength)?;
        check_positive("wavelength_unit", self.wavelength_unit)?;
        if !self.index_offset.is_finite() || self.index_offset.value() < 1.0 {
            return Err(invalid("index_offset must be >= 1"));
        }
        if !self.index_scale.is_finite() || self.index_scale.value() < 0.0 {
            return Err(invalid("index_scale must be >= 0"));
        }
        if !(self.base_amplitude.is_finite() && self.base_amplitude > 0.0) {
            return Err(invalid("base_amplitude must be positive"));
        }
        check_jitter(&self.jitter)?;
        check_phase_range("interferometer", self.scale_ratio(), self.arm_count, self.exponent)
    }

    /// Refractive index of arm `m`.
    pub fn refractive_index(&self, m: u64) -> f64 {
        self.index_offset.value() + self.index_scale.value() * index_power(m, self.exponent)
    }

    /// `b L / lambda`, the per-`m^k` phase in cycles.
    pub fn scale_ratio(&self) -> Quantity {
        self.index_scale * self.arm_length / self.wavelength
    }

    /// Largest number addressable down to `min_wavelength`, `b L / lambda_min`.
    pub fn capacity(&self, min_wavelength: Quantity) -> f64 {
        (self.index_scale * self.arm_length / min_wavelength).value()
    }
}

/// Equal-amplitude pulses delayed by `t_m = m^k tau`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseTrainConfig {
    pub pulse_count: u64,
    /// Seconds.
    pub unit_delay: Quantity,
    /// Hertz.
    pub optical_frequency: Quantity,
    pub exponent: u32,
    #[serde(default = "one")]
    pub base_amplitude: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jitter: Option<AmplitudeJitter>,
}

impl PulseTrainConfig {
    pub fn new(
        pulse_count: u64,
        unit_delay: impl Into<Quantity>,
        optical_frequency: impl Into<Quantity>,
        exponent: u32,
    ) -> Self {
        PulseTrainConfig {
            pulse_count,
            unit_delay: unit_delay.into(),
            optical_frequency: optical_frequency.into(),
            exponent,
            base_amplitude: 1.0,
            jitter: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_count("pulse_count", self.pulse_count)?;
        check_count("exponent", u64::from(self.exponent))?;
        check_positive("unit_delay", self.unit_delay)?;
        check_positive("optical_frequency", self.optical_frequency)?;
        if !(self.base_amplitude.is_finite() && self.base_amplitude > 0.0) {
            return Err(invalid("base_amplitude must be positive"));
        }
        check_jitter(&self.jitter)?;
        check_phase_range("pulse train", self.scale_ratio(), self.pulse_count, self.exponent)
    }

    /// Delay of pulse `m` relative to the time origin.
    pub fn delay(&self, m: u64) -> f64 {
        index_power(m, self.exponent) * self.unit_delay.value()
    }

    /// `nu tau`.
    pub fn scale_ratio(&self) -> Quantity {
        self.optical_frequency * self.unit_delay
    }
}

/// Modes at `omega_m = m^k omega0`, optionally odd harmonics only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeatConfig {
    pub mode_count: u64,
    /// `nu0 = omega0 / 2 pi`, hertz.
    pub base_frequency: Quantity,
    pub exponent: u32,
    #[serde(default)]
    pub selection: TermSelection,
    #[serde(default = "one")]
    pub base_amplitude: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jitter: Option<AmplitudeJitter>,
}

impl BeatConfig {
    pub fn new(mode_count: u64, base_frequency: impl Into<Quantity>, exponent: u32) -> Self {
        BeatConfig {
            mode_count,
            base_frequency: base_frequency.into(),
            exponent,
            selection: TermSelection::All,
            base_amplitude: 1.0,
            jitter: None,
        }
    }

    pub fn with_selection(mut self, selection: TermSelection) -> Self {
        self.selection = selection;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_count("mode_count", self.mode_count)?;
        check_count("exponent", u64::from(self.exponent))?;
        check_positive("base_frequency", self.base_frequency)?;
        if !(self.base_amplitude.is_finite() && self.base_amplitude > 0.0) {
            return Err(invalid("base_amplitude must be positive"));
        }
        check_jitter(&self.jitter)
    }

    /// Angular frequency of mode `m`.
    pub fn angular_frequency(&self, m: u64) -> f64 {
        std::f64::consts::TAU * self.base_frequency.value() * index_power(m, self.exponent)
    }
}

/// Light split over `M` paths through Faraday cells at `B_m = B0 m^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaradayConfig {
    pub path_count: u64,
    /// Metres.
    pub path_length: Quantity,
    /// Verdet constant divided by `2 pi`.
    pub verdet_scale: Quantity,
    /// Tesla.
    pub base_field: Quantity,
    pub exponent: u32,
    #[serde(default = "one")]
    pub base_amplitude: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jitter: Option<AmplitudeJitter>,
}

impl FaradayConfig {
    pub fn new(
        path_count: u64,
        path_length: impl Into<Quantity>,
        verdet_scale: impl Into<Quantity>,
        base_field: impl Into<Quantity>,
        exponent: u32,
    ) -> Self {
        FaradayConfig {
            path_count,
            path_length: path_length.into(),
            verdet_scale: verdet_scale.into(),
            base_field: base_field.into(),
            exponent,
            base_amplitude: 1.0,
            jitter: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_count("path_count", self.path_count)?;
        check_count("exponent", u64::from(self.exponent))?;
        check_positive("path_length", self.path_length)?;
        check_positive("base_field", self.base_field)?;
        if !self.verdet_scale.is_finite() || self.verdet_scale.value() < 0.0 {
            return Err(invalid("verdet_scale must be >= 0"));
        }
        if !(self.base_amplitude.is_finite() && self.base_amplitude > 0.0) {
            return Err(invalid("base_amplitude must be positive"));
        }
        check_jitter(&self.jitter)?;
        check_phase_range("faraday", self.scale_ratio(), self.path_count, self.exponent)
    }

    /// Rotation angle `2 pi b L B_m` on path `m`, radians.
    pub fn rotation(&self, m: u64) -> f64 {
        std::f64::consts::TAU
            * (self.verdet_scale * self.path_length * self.base_field).value()
            * index_power(m, self.exponent)
    }

    /// `b L B0`.
    pub fn scale_ratio(&self) -> Quantity {
        self.verdet_scale * self.path_length * self.base_field
    }
}

/// `E = E0 sum_m exp(2 pi i (a + b m^k) L / lambda)`.
pub fn mzi_reading(config: &InterferometerConfig) -> Result<DetectorReading> {
    config.validate()?;
    let offset = (config.index_offset * config.arm_length / config.wavelength).cycles(1.0);
    let scale = config.scale_ratio();
    let k = config.exponent;
    let field = superpose(
        (1..=config.arm_count).map(|m| offset + scale.cycles(index_power(m, k))),
        1.0,
        config.base_amplitude,
        config.jitter,
    );
    Ok(reading(
        field,
        config.arm_count as f64 * config.base_amplitude,
        config.arm_count,
    ))
}

/// `E = E0 sum_m exp(2 pi i m^k nu tau)`.
pub fn pulse_train_reading(config: &PulseTrainConfig) -> Result<DetectorReading> {
    config.validate()?;
    let scale = config.scale_ratio();
    let k = config.exponent;
    let field = superpose(
        (1..=config.pulse_count).map(|m| scale.cycles(index_power(m, k))),
        1.0,
        config.base_amplitude,
        config.jitter,
    );
    Ok(reading(
        field,
        config.pulse_count as f64 * config.base_amplitude,
        config.pulse_count,
    ))
}

/// `E(t) = E0 sum_{selected m} exp(-2 pi i m^k nu0 t)`, normalized by the
/// number of selected modes.
pub fn beat_reading(config: &BeatConfig, detection_time: Quantity) -> Result<DetectorReading> {
    config.validate()?;
    check_positive("detection_time", detection_time)?;
    let scale = config.base_frequency * detection_time;
    check_phase_range("beats", scale, config.mode_count, config.exponent)?;
    let k = config.exponent;
    let terms = config.selection.count(config.mode_count);
    let field = superpose(
        config
            .selection
            .indices(config.mode_count)
            .map(|m| scale.cycles(index_power(m, k))),
        -1.0,
        config.base_amplitude,
        config.jitter,
    );
    Ok(reading(field, terms as f64 * config.base_amplitude, terms))
}

/// `E = (E0 / M) sum_m exp(2 pi i m^k b L B0)`; the `1/M` is part of the field.
pub fn faraday_reading(config: &FaradayConfig) -> Result<DetectorReading> {
    config.validate()?;
    let scale = config.scale_ratio();
    let k = config.exponent;
    let paths = config.path_count as f64;
    let field = superpose(
        (1..=config.path_count).map(|m| scale.cycles(index_power(m, k))),
        1.0,
        config.base_amplitude / paths,
        config.jitter,
    );
    Ok(reading(field, config.base_amplitude, config.path_count))
}
