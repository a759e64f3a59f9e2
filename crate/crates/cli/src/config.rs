//! Setup files: TOML key/value documents mirroring the optics config types.
//!
//! ```toml
//! # mzi.toml
//! arm_count = 4
//! arm_length = 1.0
//! wavelength = 3e-6
//! index_scale = 1.5e-5
//! exponent = 2
//! ```
//!
//! Numbers may be decimals or fraction strings (`unit_delay = "1/3"`). A beats
//! file may carry `detection_time`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use wavefactor_core::optics::{
    BeatConfig, FaradayConfig, InterferometerConfig, PulseTrainConfig, Quantity, Setup,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetupKind {
    Mzi,
    Pulses,
    Beats,
    Faraday,
}

impl FromStr for SetupKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "mzi" => Ok(SetupKind::Mzi),
            "pulses" => Ok(SetupKind::Pulses),
            "beats" => Ok(SetupKind::Beats),
            "faraday" => Ok(SetupKind::Faraday),
            _ => Err(format!("unknown setup '{s}' (expected mzi, pulses, beats or faraday)")),
        }
    }
}

impl fmt::Display for SetupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetupKind::Mzi => "mzi",
            SetupKind::Pulses => "pulses",
            SetupKind::Beats => "beats",
            SetupKind::Faraday => "faraday",
        })
    }
}

fn typed<T: DeserializeOwned>(table: toml::Table) -> Result<T, String> {
    toml::Value::Table(table)
        .try_into()
        .map_err(|e: toml::de::Error| e.message().to_owned())
}

/// Parse a setup document. Beats without `detection_time` default to `t = 1 s`.
pub fn parse_setup(kind: SetupKind, text: &str) -> Result<Setup, String> {
    let mut table: toml::Table = toml::from_str(text).map_err(|e| e.message().to_owned())?;
    let setup = match kind {
        SetupKind::Mzi => Setup::Interferometer(typed::<InterferometerConfig>(table)?),
        SetupKind::Pulses => Setup::PulseTrain(typed::<PulseTrainConfig>(table)?),
        SetupKind::Faraday => Setup::Faraday(typed::<FaradayConfig>(table)?),
        SetupKind::Beats => {
            let detection_time = match table.remove("detection_time") {
                None => Quantity::ONE,
                Some(toml::Value::Float(v)) => Quantity::new(v),
                Some(toml::Value::Integer(v)) => Quantity::new(v as f64),
                Some(toml::Value::String(s)) => s.parse().map_err(|e| format!("detection_time: {e}"))?,
                Some(_) => return Err("detection_time must be a number or fraction string".into()),
            };
            Setup::Beat {
                config: typed::<BeatConfig>(table)?,
                detection_time,
            }
        }
    };
    Ok(setup)
}

pub fn load_setup(kind: SetupKind, path: &Path) -> Result<Setup, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    parse_setup(kind, &text).map_err(|e| format!("malformed config {}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use wavefactor_core::TermSelection;

    #[test]
    fn parses_each_setup() {
        let mzi = parse_setup(
            SetupKind::Mzi,
            "arm_count = 4\narm_length = 1.0\nwavelength = 3e-6\nindex_scale = 1.5e-5\nexponent = 2\n",
        )
        .unwrap();
        assert!(matches!(mzi, Setup::Interferometer(ref c) if c.arm_count == 4));

        let pulses = parse_setup(
            SetupKind::Pulses,
            "pulse_count = 5\nunit_delay = \"1/3\"\noptical_frequency = 15\nexponent = 1\n",
        )
        .unwrap();
        let Setup::PulseTrain(c) = pulses else { panic!() };
        assert_eq!(c.unit_delay, Quantity::reciprocal_of(3));

        let beats = parse_setup(
            SetupKind::Beats,
            "mode_count = 8\nbase_frequency = 6\nexponent = 1\nselection = \"OddOnly\"\ndetection_time = \"1/3\"\n",
        )
        .unwrap();
        let Setup::Beat { config, detection_time } = beats else { panic!() };
        assert_eq!(config.selection, TermSelection::OddOnly);
        assert_eq!(detection_time, Quantity::reciprocal_of(3));

        let faraday = parse_setup(
            SetupKind::Faraday,
            "path_count = 4\npath_length = 1\nverdet_scale = 21\nbase_field = 0.25\nexponent = 2\n\n[jitter]\nspread = 0.1\nseed = 3\n",
        )
        .unwrap();
        assert!(matches!(faraday, Setup::Faraday(ref c) if c.jitter.is_some()));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_setup(SetupKind::Mzi, "arm_count = 4\n").is_err());
        assert!(parse_setup(SetupKind::Pulses, "pulse_count = 5\nunit_delay = \"x\"\noptical_frequency = 1\nexponent = 1\nbogus = 1\n").is_err());
        assert!(parse_setup(SetupKind::Faraday, "not toml").is_err());
    }
}
