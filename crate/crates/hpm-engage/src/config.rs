//! Flat key-value scenario files.
//!
//! One `key = value` per line, `#` comments, units embedded in the key names
//! so nothing is ambiguous. Vector keys take three whitespace-separated
//! components. Unknown and duplicate keys are errors, anchored to their
//! line. Serialization uses shortest-round-trip float formatting, so
//! parse -> serialize -> parse is the identity.

use std::collections::HashMap;
use std::path::Path;

use crate::antenna::AntennaParams;
use crate::atmosphere::{AtmosphereParams, RainParams};
use crate::error::{Error, Result};
use crate::kill::KillModel;
use crate::kinematics::KinematicState;
use crate::link::TransmitterParams;
use crate::numerics::DEFAULT_GH_ORDER;
use crate::scenario::Scenario;

/// Every key the format accepts, in canonical serialization order.
pub const SCENARIO_KEYS: &[&str] = &[
    "peak_power_W",
    "pulse_width_s",
    "prf_Hz",
    "frequency_Hz",
    "antenna_diameter_m",
    "aperture_efficiency",
    "jitter_sigma_rad",
    "range_nominal_m",
    "r0_m",
    "v0_mps",
    "sigma_a",
    "eval_time_s",
    "gamma_gas_dB_per_km",
    "rain_enabled",
    "rain_k",
    "rain_alpha",
    "rain_shape",
    "rain_rate_param",
    "e_threshold_J",
    "kill_slope_per_J",
    "dwell_s",
    "gh_order",
];

const REQUIRED_KEYS: &[&str] = &[
    "peak_power_W",
    "pulse_width_s",
    "prf_Hz",
    "frequency_Hz",
    "antenna_diameter_m",
    "jitter_sigma_rad",
    "e_threshold_J",
    "kill_slope_per_J",
    "dwell_s",
];

struct RawEntry {
    line: usize,
    value: String,
}

struct RawConfig {
    path: String,
    entries: HashMap<String, RawEntry>,
}

impl RawConfig {
    fn parse(text: &str, path: &str) -> Result<Self> {
        let mut entries = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                path: path.into(),
                line: line_no,
                message: format!("expected `key = value`, found `{line}`"),
            })?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if !SCENARIO_KEYS.contains(&key.as_str()) {
                return Err(Error::Parse {
                    path: path.into(),
                    line: line_no,
                    message: format!("unknown key `{key}`"),
                });
            }
            if value.is_empty() {
                return Err(Error::Parse {
                    path: path.into(),
                    line: line_no,
                    message: format!("key `{key}` has no value"),
                });
            }
            if let Some(prev) = entries.insert(
                key.clone(),
                RawEntry {
                    line: line_no,
                    value,
                },
            ) {
                return Err(Error::Parse {
                    path: path.into(),
                    line: line_no,
                    message: format!("duplicate key `{key}` (first set on line {})", prev.line),
                });
            }
        }
        Ok(RawConfig {
            path: path.into(),
            entries,
        })
    }

    fn parse_err(&self, key: &str, message: String) -> Error {
        let line = self.entries.get(key).map(|e| e.line).unwrap_or(0);
        Error::Parse {
            path: self.path.clone(),
            line,
            message,
        }
    }

    fn float(&self, key: &str) -> Result<Option<f64>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(entry) => entry
                .value
                .parse::<f64>()
                .map(Some)
                .map_err(|_| self.parse_err(key, format!("cannot parse `{}` as a number", entry.value))),
        }
    }

    fn require_float(&self, key: &str) -> Result<f64> {
        self.float(key)?.ok_or_else(|| Error::Parse {
            path: self.path.clone(),
            line: 0,
            message: format!("missing required key `{key}`"),
        })
    }

    fn vector3(&self, key: &str) -> Result<Option<[f64; 3]>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(entry) => {
                let parts: Vec<&str> = entry.value.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(self.parse_err(
                        key,
                        format!("`{key}` needs 3 components, found {}", parts.len()),
                    ));
                }
                let mut out = [0.0; 3];
                for (slot, part) in out.iter_mut().zip(&parts) {
                    *slot = part.parse::<f64>().map_err(|_| {
                        self.parse_err(key, format!("cannot parse `{part}` as a number"))
                    })?;
                }
                Ok(Some(out))
            }
        }
    }

    fn boolean(&self, key: &str) -> Result<Option<bool>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(entry) => match entry.value.as_str() {
                "true" => Ok(Some(true)),
                "false" => Ok(Some(false)),
                other => {
                    Err(self.parse_err(key, format!("expected `true` or `false`, found `{other}`")))
                }
            },
        }
    }
}

/// Parses a scenario from file contents; `path` labels error messages.
pub fn parse_scenario(text: &str, path: &str) -> Result<Scenario> {
    let raw = RawConfig::parse(text, path)?;
    for key in REQUIRED_KEYS {
        if !raw.entries.contains_key(*key) {
            return Err(Error::Parse {
                path: path.into(),
                line: 0,
                message: format!("missing required key `{key}`"),
            });
        }
    }

    let frequency = raw.require_float("frequency_Hz")?;
    let tx = TransmitterParams::from_frequency(
        raw.require_float("peak_power_W")?,
        raw.require_float("pulse_width_s")?,
        raw.require_float("prf_Hz")?,
        frequency,
    );

    let antenna = AntennaParams {
        diameter_m: raw.require_float("antenna_diameter_m")?,
        wavelength_m: tx.wavelength_m,
        aperture_efficiency: raw.float("aperture_efficiency")?.unwrap_or(1.0),
        jitter_sigma_rad: raw.require_float("jitter_sigma_rad")?,
    };

    // documented defaults for Table-style scenarios that give only a
    // nominal range
    let kinematics = KinematicState {
        r0: raw.vector3("r0_m")?.unwrap_or([1000.0, 0.0, 0.0]),
        v0: raw.vector3("v0_mps")?.unwrap_or([0.0; 3]),
        sigma_a: raw.float("sigma_a")?.unwrap_or(0.0),
    };

    let rain_enabled = raw.boolean("rain_enabled")?.unwrap_or(false);
    let rain = if rain_enabled {
        let field = |key: &str| -> Result<f64> {
            raw.float(key)?.ok_or_else(|| Error::Parse {
                path: path.into(),
                line: 0,
                message: format!("rain_enabled = true requires key `{key}`"),
            })
        };
        Some(RainParams {
            k_coeff: field("rain_k")?,
            alpha: field("rain_alpha")?,
            shape: field("rain_shape")?,
            rate: field("rain_rate_param")?,
        })
    } else {
        None
    };

    let gh_order_f = raw.float("gh_order")?.unwrap_or(DEFAULT_GH_ORDER as f64);
    if gh_order_f.fract() != 0.0 || gh_order_f < 0.0 {
        return Err(raw.parse_err("gh_order", format!("gh_order must be a nonnegative integer, got {gh_order_f}")));
    }

    Ok(Scenario {
        tx,
        antenna,
        kinematics,
        range_nominal_m: raw.float("range_nominal_m")?,
        eval_time_s: raw.float("eval_time_s")?.unwrap_or(0.0),
        atmosphere: AtmosphereParams {
            gamma_gas_db_per_km: raw.float("gamma_gas_dB_per_km")?.unwrap_or(0.0),
            rain,
        },
        kill: KillModel {
            e_threshold_j: raw.require_float("e_threshold_J")?,
            slope_per_j: raw.require_float("kill_slope_per_J")?,
        },
        dwell_s: raw.require_float("dwell_s")?,
        gh_order: gh_order_f as usize,
    })
}

/// Reads and parses a scenario file.
pub fn parse_scenario_file(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)?;
    parse_scenario(&text, &path.display().to_string())
}

/// Canonical serialization. Rust's shortest-round-trip float formatting
/// guarantees that re-parsing reproduces the scenario exactly.
pub fn serialize_scenario(s: &Scenario) -> String {
    let mut out = String::new();
    let mut push = |key: &str, value: String| {
        out.push_str(key);
        out.push_str(" = ");
        out.push_str(&value);
        out.push('\n');
    };
    push("peak_power_W", s.tx.peak_power_w.to_string());
    push("pulse_width_s", s.tx.pulse_width_s.to_string());
    push("prf_Hz", s.tx.prf_hz.to_string());
    push("frequency_Hz", s.tx.frequency_hz.to_string());
    push("antenna_diameter_m", s.antenna.diameter_m.to_string());
    push("aperture_efficiency", s.antenna.aperture_efficiency.to_string());
    push("jitter_sigma_rad", s.antenna.jitter_sigma_rad.to_string());
    if let Some(r) = s.range_nominal_m {
        push("range_nominal_m", r.to_string());
    }
    push(
        "r0_m",
        format!("{} {} {}", s.kinematics.r0[0], s.kinematics.r0[1], s.kinematics.r0[2]),
    );
    push(
        "v0_mps",
        format!("{} {} {}", s.kinematics.v0[0], s.kinematics.v0[1], s.kinematics.v0[2]),
    );
    push("sigma_a", s.kinematics.sigma_a.to_string());
    push("eval_time_s", s.eval_time_s.to_string());
    push("gamma_gas_dB_per_km", s.atmosphere.gamma_gas_db_per_km.to_string());
    push("rain_enabled", s.atmosphere.rain.is_some().to_string());
    if let Some(rain) = &s.atmosphere.rain {
        push("rain_k", rain.k_coeff.to_string());
        push("rain_alpha", rain.alpha.to_string());
        push("rain_shape", rain.shape.to_string());
        push("rain_rate_param", rain.rate.to_string());
    }
    push("e_threshold_J", s.kill.e_threshold_j.to_string());
    push("kill_slope_per_J", s.kill.slope_per_j.to_string());
    push("dwell_s", s.dwell_s.to_string());
    push("gh_order", s.gh_order.to_string());
    out
}

// ===========================================================================
// Tests
// ===========================================================================


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn random_scenarios_round_trip(
            power in 1e3f64..1e7,
            width in 1e-8f64..1e-4,
            prf in 10.0f64..1e5,
            freq in 1e8f64..1e11,
            diameter in 0.1f64..10.0,
            jitter in 0.0f64..0.1,
            sigma_a in 0.0f64..100.0,
            eth in 1e-4f64..1.0,
            slope in 1.0f64..1e4,
            dwell in 0.0f64..10.0,
            nominal in proptest::option::of(10.0f64..1e5),
        ) {
            let mut s = Scenario::baseline();
            s.tx = TransmitterParams::from_frequency(power, width, prf, freq);
            s.antenna.wavelength_m = s.tx.wavelength_m;
            s.antenna.diameter_m = diameter;
            s.antenna.jitter_sigma_rad = jitter;
            s.kinematics.sigma_a = sigma_a;
            s.kill = KillModel { e_threshold_j: eth, slope_per_j: slope };
            s.dwell_s = dwell;
            s.range_nominal_m = nominal;
            let round = parse_scenario(&serialize_scenario(&s), "prop.conf").unwrap();
            prop_assert_eq!(s, round);
        }
    }
}
