//! Python bindings for `wavefactor-core`.
//!
//! Sum kinds, selections and quantities are passed as strings (`"gauss"`,
//! `"odd"`, `"1/3"`); quantities may also be plain floats.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;

use wavefactor_core::optics::{
    map_to_canonical, BeatConfig, FaradayConfig, InterferometerConfig, PulseTrainConfig, Quantity,
    Setup as CoreSetup,
};
use wavefactor_core::{self as core, Error, ScanParams, SumKind, SumSpec, TermSelection, Truncation};

create_exception!(wavefactor, NotSeparatedError, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NotSeparated { .. } => NotSeparatedError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn kind(name: &str) -> PyResult<SumKind> {
    name.parse().map_err(to_py)
}

fn selection(name: &str) -> PyResult<TermSelection> {
    name.parse().map_err(to_py)
}

fn quantity(obj: &Bound<'_, PyAny>) -> PyResult<Quantity> {
    if let Ok(s) = obj.cast::<PyString>() {
        return s.to_str()?.parse().map_err(to_py);
    }
    Ok(Quantity::new(obj.extract::<f64>()?))
}

#[pyclass(frozen, get_all, name = "SumValue", module = "wavefactor")]
struct PySumValue {
    real: f64,
    imag: f64,
    magnitude: f64,
    terms_used: u64,
}

#[pymethods]
impl PySumValue {
    fn __repr__(&self) -> String {
        format!(
            "SumValue(real={}, imag={}, magnitude={}, terms_used={})",
            self.real, self.imag, self.magnitude, self.terms_used
        )
    }
}

/// Normalized truncated sum `A_N^(M)(l)`.
#[pyfunction]
#[pyo3(signature = (number, trial, terms, kind="gauss", selection="all"))]
fn evaluate_sum(number: u64, trial: u64, terms: u64, kind: &str, selection: &str) -> PyResult<PySumValue> {
    let spec = SumSpec::new(number, terms, self::kind(kind)?, self::selection(selection)?).map_err(to_py)?;
    let v = core::evaluate_sum(&spec, trial).map_err(to_py)?;
    Ok(PySumValue {
        real: v.value.re,
        imag: v.value.im,
        magnitude: v.magnitude,
        terms_used: v.terms_used,
    })
}

/// Fractional part of `m^k N / l`, in `[0, 1)`.
#[pyfunction]
fn phase_fraction(m: u64, k: u64, number: u64, trial: u64) -> PyResult<f64> {
    core::phase_fraction(m, k, number, trial).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (number, kind="gauss"))]
fn choose_truncation(number: u64, kind: &str) -> PyResult<u64> {
    Ok(core::choose_truncation(number, self::kind(kind)?))
}

#[pyclass(frozen, get_all, name = "ScanRow", module = "wavefactor")]
struct PyScanRow {
    trial: u64,
    magnitude: f64,
    verdict: String,
    complement: Option<u64>,
}

#[pymethods]
impl PyScanRow {
    fn __repr__(&self) -> String {
        format!(
            "ScanRow(trial={}, magnitude={}, verdict='{}', complement={:?})",
            self.trial, self.magnitude, self.verdict, self.complement
        )
    }
}

fn params(
    kind: &str,
    terms: Option<u64>,
    selection: &str,
    threshold: f64,
    trial_range: Option<(u64, u64)>,
) -> PyResult<ScanParams> {
    Ok(ScanParams {
        truncation: terms.map_or(Truncation::Auto, Truncation::Fixed),
        kind: self::kind(kind)?,
        selection: self::selection(selection)?,
        threshold,
        trial_range,
    })
}

/// Scan trial factors; `terms=None` picks the truncation automatically.
#[pyfunction]
#[pyo3(signature = (number, kind="gauss", terms=None, selection="all", threshold=core::DEFAULT_THRESHOLD, trial_range=None))]
fn scan(
    py: Python<'_>,
    number: u64,
    kind: &str,
    terms: Option<u64>,
    selection: &str,
    threshold: f64,
    trial_range: Option<(u64, u64)>,
) -> PyResult<Vec<PyScanRow>> {
    let p = params(kind, terms, selection, threshold, trial_range)?;
    let rows = py.detach(|| core::scan(number, &p)).map_err(to_py)?;
    Ok(rows
        .into_iter()
        .map(|r| PyScanRow {
            trial: r.trial,
            magnitude: r.magnitude,
            verdict: r.verdict.to_string(),
            complement: r.complement,
        })
        .collect())
}

#[pyclass(frozen, get_all, name = "Factorization", module = "wavefactor")]
struct PyFactorization {
    number: u64,
    prime_factors: Vec<u64>,
    terms_per_level: Vec<u64>,
}

#[pymethods]
impl PyFactorization {
    fn __repr__(&self) -> String {
        format!("Factorization(number={}, prime_factors={:?})", self.number, self.prime_factors)
    }
}

#[pyfunction]
#[pyo3(signature = (number, kind="gauss", terms=None, selection="all", threshold=core::DEFAULT_THRESHOLD))]
fn factorize(
    py: Python<'_>,
    number: u64,
    kind: &str,
    terms: Option<u64>,
    selection: &str,
    threshold: f64,
) -> PyResult<PyFactorization> {
    let p = params(kind, terms, selection, threshold, None)?;
    let r = py.detach(|| core::factorize(number, &p)).map_err(to_py)?;
    Ok(PyFactorization {
        number: r.number,
        terms_per_level: r.terms_used_per_level(),
        prime_factors: r.prime_factors,
    })
}

/// Prime factors by trial division.
#[pyfunction]
fn oracle_factorize(number: u64) -> PyResult<Vec<u64>> {
    core::oracle_factorize(number).map_err(to_py)
}

/// Smallest truncation that pushes every non-divisor below `threshold`.
/// Raises `NotSeparatedError` when `cap` terms are not enough.
#[pyfunction]
#[pyo3(signature = (number, kind="gauss", threshold=core::DEFAULT_THRESHOLD, cap=None))]
fn min_discriminating_terms(
    py: Python<'_>,
    number: u64,
    kind: &str,
    threshold: f64,
    cap: Option<u64>,
) -> PyResult<u64> {
    let kind = self::kind(kind)?;
    py.detach(|| match cap {
        Some(cap) => core::min_discriminating_terms_capped(number, kind, threshold, cap),
        None => core::min_discriminating_terms(number, kind, threshold),
    })
    .map_err(to_py)
}

#[pyclass(frozen, get_all, name = "DetectorReading", module = "wavefactor")]
struct PyDetectorReading {
    raw_intensity: f64,
    normalized_magnitude: f64,
    terms: u64,
}

#[pymethods]
impl PyDetectorReading {
    fn __repr__(&self) -> String {
        format!(
            "DetectorReading(raw_intensity={}, normalized_magnitude={}, terms={})",
            self.raw_intensity, self.normalized_magnitude, self.terms
        )
    }
}

/// One of the four optical setups. Build with the static constructors.
#[pyclass(frozen, name = "Setup", module = "wavefactor")]
struct PySetup(CoreSetup);

#[pymethods]
impl PySetup {
    #[staticmethod]
    #[pyo3(signature = (arm_count, arm_length, wavelength, index_scale, exponent, index_offset=None, wavelength_unit=None))]
    fn mzi(
        arm_count: u64,
        arm_length: &Bound<'_, PyAny>,
        wavelength: &Bound<'_, PyAny>,
        index_scale: &Bound<'_, PyAny>,
        exponent: u32,
        index_offset: Option<&Bound<'_, PyAny>>,
        wavelength_unit: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<Self> {
        let mut c = InterferometerConfig::new(
            arm_count,
            quantity(arm_length)?,
            quantity(wavelength)?,
            quantity(index_scale)?,
            exponent,
        );
        if let Some(a) = index_offset {
            c.index_offset = quantity(a)?;
        }
        if let Some(u) = wavelength_unit {
            c.wavelength_unit = quantity(u)?;
        }
        c.validate().map_err(to_py)?;
        Ok(PySetup(CoreSetup::Interferometer(c)))
    }

    #[staticmethod]
    fn pulses(
        pulse_count: u64,
        unit_delay: &Bound<'_, PyAny>,
        optical_frequency: &Bound<'_, PyAny>,
        exponent: u32,
    ) -> PyResult<Self> {
        let c = PulseTrainConfig::new(pulse_count, quantity(unit_delay)?, quantity(optical_frequency)?, exponent);
        c.validate().map_err(to_py)?;
        Ok(PySetup(CoreSetup::PulseTrain(c)))
    }

    #[staticmethod]
    #[pyo3(signature = (mode_count, base_frequency, exponent, detection_time, selection="all"))]
    fn beats(
        mode_count: u64,
        base_frequency: &Bound<'_, PyAny>,
        exponent: u32,
        detection_time: &Bound<'_, PyAny>,
        selection: &str,
    ) -> PyResult<Self> {
        let c = BeatConfig::new(mode_count, quantity(base_frequency)?, exponent)
            .with_selection(self::selection(selection)?);
        c.validate().map_err(to_py)?;
        Ok(PySetup(CoreSetup::Beat {
            config: c,
            detection_time: quantity(detection_time)?,
        }))
    }

    #[staticmethod]
    fn faraday(
        path_count: u64,
        path_length: &Bound<'_, PyAny>,
        verdet_scale: &Bound<'_, PyAny>,
        base_field: &Bound<'_, PyAny>,
        exponent: u32,
    ) -> PyResult<Self> {
        let c = FaradayConfig::new(
            path_count,
            quantity(path_length)?,
            quantity(verdet_scale)?,
            quantity(base_field)?,
            exponent,
        );
        c.validate().map_err(to_py)?;
        Ok(PySetup(CoreSetup::Faraday(c)))
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.0.name()
    }

    fn reading(&self) -> PyResult<PyDetectorReading> {
        let r = self.0.reading().map_err(to_py)?;
        Ok(PyDetectorReading {
            raw_intensity: r.raw_intensity,
            normalized_magnitude: r.normalized_magnitude,
            terms: r.terms,
        })
    }

    /// `(effective_number, effective_trial, terms, kind, selection)`.
    fn canonical(&self) -> PyResult<(f64, f64, u64, String, String)> {
        let m = map_to_canonical(&self.0).map_err(to_py)?;
        Ok((
            m.effective_number.value(),
            m.effective_trial.value(),
            m.truncation,
            m.kind.to_string(),
            m.selection.to_string(),
        ))
    }

    /// `(trial, normalized_magnitude)` with the setup retuned to each trial.
    fn sweep(&self, py: Python<'_>, trials: Vec<u64>) -> PyResult<Vec<(u64, f64)>> {
        let setup = &self.0;
        let points = py
            .detach(|| wavefactor_core::optics::sweep(setup, setup.sweep_variable(), &trials))
            .map_err(to_py)?;
        Ok(points.into_iter().map(|p| (p.trial, p.normalized_magnitude)).collect())
    }

    fn __repr__(&self) -> String {
        format!("Setup.{}(...)", self.0.name())
    }
}

#[pymodule]
fn wavefactor(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NotSeparatedError", m.py().get_type::<NotSeparatedError>())?;
    m.add("DEFAULT_THRESHOLD", core::DEFAULT_THRESHOLD)?;
    m.add_class::<PySumValue>()?;
    m.add_class::<PyScanRow>()?;
    m.add_class::<PyFactorization>()?;
    m.add_class::<PyDetectorReading>()?;
    m.add_class::<PySetup>()?;
    m.add_function(wrap_pyfunction!(evaluate_sum, m)?)?;
    m.add_function(wrap_pyfunction!(phase_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(choose_truncation, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_factorize, m)?)?;
    m.add_function(wrap_pyfunction!(min_discriminating_terms, m)?)?;
    Ok(())
}
