//! Free-space spreading plus gaseous and rain attenuation along the
//! stochastic slant path.
//!
//! Gaseous specific attenuation is taken as a quasi-deterministic input in
//! dB/km. Rain couples through the ITU-style power law
//! `gamma_rain = k(f) * R_rain^alpha(f)` with a Gamma-distributed rain rate,
//! whose moments follow from Gamma moment identities evaluated in the log
//! domain for stability.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinematics::RangeStats;
use crate::numerics::log_gamma;

/// Rain power-law and rain-rate distribution parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RainParams {
    /// Power-law coefficient `k(f)` \[dB/km per (mm/h)^alpha\].
    pub k_coeff: f64,
    /// Power-law exponent `alpha(f)`.
    pub alpha: f64,
    /// Gamma shape of the rain rate.
    pub shape: f64,
    /// Gamma rate (inverse scale) of the rain rate \[1/(mm/h)\].
    pub rate: f64,
}

/// Atmospheric channel parameters. `rain: None` disables precipitation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtmosphereParams {
    /// Gaseous specific attenuation \[dB/km\].
    pub gamma_gas_db_per_km: f64,
    pub rain: Option<RainParams>,
}

impl AtmosphereParams {
    /// Gaseous-only channel.
    pub fn gaseous(gamma_gas_db_per_km: f64) -> Self {
        Self {
            gamma_gas_db_per_km,
            rain: None,
        }
    }

    pub fn rain_enabled(&self) -> bool {
        self.rain.is_some()
    }

    pub fn validate(&self, failures: &mut Vec<String>) {
        if !(self.gamma_gas_db_per_km >= 0.0) {
            failures.push(format!(
                "gaseous attenuation must be >= 0 dB/km, got {}",
                self.gamma_gas_db_per_km
            ));
        }
        if let Some(rain) = &self.rain {
            if !(rain.k_coeff >= 0.0) {
                failures.push(format!("rain k coefficient must be >= 0, got {}", rain.k_coeff));
            }
            if !(rain.alpha > 0.0) {
                failures.push(format!("rain alpha must be > 0, got {}", rain.alpha));
            }
            if !(rain.shape > 0.0) {
                failures.push(format!("rain-rate Gamma shape must be > 0, got {}", rain.shape));
            }
            if !(rain.rate > 0.0) {
                failures.push(format!("rain-rate Gamma rate must be > 0, got {}", rain.rate));
            }
        }
    }
}

/// Moments of the total path attenuation in dB at the mean elevation angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AttenuationStats {
    /// Mean attenuation \[dB\].
    pub mu_a_db: f64,
    /// Attenuation variance \[dB^2\].
    pub sigma2_a_db2: f64,
    /// Mean elevation angle \[rad\].
    pub elevation_rad: f64,
}

/// Free-space path loss `(4 pi R / lambda)^2` as a dimensionless power ratio.
pub fn free_space_loss(range_m: f64, wavelength_m: f64) -> Result<f64> {
    if !(range_m > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "range must be positive, got {range_m}"
        )));
    }
    let ratio = 4.0 * std::f64::consts::PI * range_m / wavelength_m;
    Ok(ratio * ratio)
}

/// Mean elevation angle `asin(z_mean / mean_range)`.
pub fn elevation_angle(z_mean_m: f64, mean_range_m: f64) -> Result<f64> {
    if z_mean_m.abs() > mean_range_m {
        return Err(Error::Geometry(format!(
            "|z| = {} exceeds mean range {}",
            z_mean_m.abs(),
            mean_range_m
        )));
    }
    Ok((z_mean_m / mean_range_m).asin())
}

/// Mean and variance of the specific rain attenuation
/// `gamma_rain = k R_rain^alpha` for `R_rain ~ Gamma(shape, rate)`:
///
/// ```text
/// E[gamma]   = k Gamma(shape + alpha)  / (rate^alpha  Gamma(shape))
/// E[gamma^2] = k^2 Gamma(shape + 2 alpha) / (rate^(2 alpha) Gamma(shape))
/// ```
///
/// computed via `log_gamma` so large shapes stay finite.
pub fn rain_attenuation_moments(p: &AtmosphereParams) -> Result<(f64, f64)> {
    let rain = p.rain.as_ref().ok_or_else(|| {
        Error::InvalidArgument("rain attenuation moments require rain to be enabled".into())
    })?;
    if !(rain.k_coeff >= 0.0) || !(rain.alpha > 0.0) || !(rain.shape > 0.0) || !(rain.rate > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "rain parameters must be positive (k >= 0), got {rain:?}"
        )));
    }
    if rain.k_coeff == 0.0 {
        return Ok((0.0, 0.0));
    }
    let ln_gamma_shape = log_gamma(rain.shape)?;
    let ln_rate = rain.rate.ln();
    let ln_m1 = log_gamma(rain.shape + rain.alpha)? - ln_gamma_shape - rain.alpha * ln_rate;
    let ln_m2 =
        log_gamma(rain.shape + 2.0 * rain.alpha)? - ln_gamma_shape - 2.0 * rain.alpha * ln_rate;
    let mean = rain.k_coeff * ln_m1.exp();
    let second = rain.k_coeff * rain.k_coeff * ln_m2.exp();
    Ok((mean, (second - mean * mean).max(0.0)))
}

/// Moments of the total attenuation `A = (gamma_gas + gamma_rain cos(phi)) R / 1000`
/// for independent `R` and `gamma_rain`, with the elevation angle held at its
/// mean `phi = asin(z_mean / mean_R)`:
///
/// ```text
/// mu_A      = [gamma_gas + E[gamma_rain] cos(phi)] mean_R / 1000
/// sigma_A^2 = 1e-6 [ gamma_gas^2 var_R
///                  + cos^2(phi) (Var[gamma_rain] (var_R + mean_R^2) + E[gamma_rain]^2 var_R)
///                  + 2 gamma_gas cos(phi) E[gamma_rain] var_R ]
/// ```
///
/// This is the exact variance of the independent product; it reduces to the
/// gaseous-only expression when rain is disabled.
pub fn attenuation_stats(
    p: &AtmosphereParams,
    range: &RangeStats,
    z_mean_m: f64,
) -> Result<AttenuationStats> {
    let elevation = elevation_angle(z_mean_m, range.mean_m)?;
    let cos_phi = elevation.cos();
    let (rain_mean, rain_var) = if p.rain.is_some() {
        rain_attenuation_moments(p)?
    } else {
        (0.0, 0.0)
    };
    let g = p.gamma_gas_db_per_km;
    let mean_km = range.mean_m / 1000.0;
    let mu_a = (g + rain_mean * cos_phi) * mean_km;
    let sigma2_a = (g * g * range.var_m2
        + cos_phi * cos_phi
            * (rain_var * (range.var_m2 + range.mean_m * range.mean_m)
                + rain_mean * rain_mean * range.var_m2)
        + 2.0 * g * cos_phi * rain_mean * range.var_m2)
        * 1e-6;
    Ok(AttenuationStats {
        mu_a_db: mu_a,
        sigma2_a_db2: sigma2_a,
        elevation_rad: elevation,
    })
}

// ---------------------------------------------------------------------------
// Convenience rain-coefficient data
// ---------------------------------------------------------------------------

/// Approximate rain power-law coefficients (k, alpha) at 2.45 GHz.
///
/// Convenience data only, interpolated from published S-band tables; rain
/// loss at this frequency is a fraction of a millidecibel per km even in
/// heavy rain. Supply measured coefficients for serious studies.
pub const RAIN_COEFF_2_45GHZ: (f64, f64) = (1.2e-4, 1.1);

/// One row of a rain-coefficient lookup table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RainCoefficientRow {
    pub frequency_ghz: f64,
    pub k_coeff: f64,
    pub alpha: f64,
}

/// Parses a rain-coefficient table: one `frequency_GHz k alpha` triple per
/// line, `#` comments allowed. Non-normative convenience format.
pub fn parse_rain_coefficients(text: &str, path_label: &str) -> Result<Vec<RainCoefficientRow>> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                path: path_label.into(),
                line: idx + 1,
                message: format!("expected `frequency_GHz k alpha`, found {} fields", fields.len()),
            });
        }
        let parse = |s: &str, what: &str| -> Result<f64> {
            s.parse::<f64>().map_err(|_| Error::Parse {
                path: path_label.into(),
                line: idx + 1,
                message: format!("cannot parse {what} `{s}` as a number"),
            })
        };
        rows.push(RainCoefficientRow {
            frequency_ghz: parse(fields[0], "frequency")?,
            k_coeff: parse(fields[1], "k")?,
            alpha: parse(fields[2], "alpha")?,
        });
    }
    Ok(rows)
}

/// Loads a rain-coefficient table from disk.
pub fn load_rain_coefficients(path: &Path) -> Result<Vec<RainCoefficientRow>> {
    let text = std::fs::read_to_string(path)?;
    parse_rain_coefficients(&text, &path.display().to_string())
}

// ===========================================================================
// Tests
// ===========================================================================
