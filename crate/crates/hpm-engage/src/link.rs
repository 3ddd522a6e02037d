//! Per-pulse received-energy statistics: the Friis-type received power,
//! log-energy moment composition, and the closed-form mean received energy
//! used by the sensitivity analysis.
//!
//! All internal quantities are SI: watts, joules, meters, seconds, radians;
//! attenuation is in dB. Unit conversion happens only at the CLI boundary.

use serde::Serialize;

use crate::antenna::{boresight_gain, AntennaParams, GainStats};
use crate::atmosphere::AttenuationStats;
use crate::error::{Error, Result};
use crate::kinematics::RangeStats;

/// Speed of light \[m/s\].
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Duty cycles above this trip a thermal-feasibility warning.
pub const DUTY_CYCLE_LIMIT: f64 = 0.1;

const LN10_OVER_10: f64 = core::f64::consts::LN_10 / 10.0;

/// Pulsed transmitter parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmitterParams {
    /// Peak pulse power \[W\].
    pub peak_power_w: f64,
    /// Pulse width \[s\].
    pub pulse_width_s: f64,
    /// Pulse repetition frequency \[Hz\].
    pub prf_hz: f64,
    /// Carrier frequency \[Hz\].
    pub frequency_hz: f64,
    /// Carrier wavelength \[m\]; must equal `c / frequency`.
    pub wavelength_m: f64,
}

impl TransmitterParams {
    /// Builds the transmitter with the wavelength derived from the carrier.
    pub fn from_frequency(peak_power_w: f64, pulse_width_s: f64, prf_hz: f64, frequency_hz: f64) -> Self {
        Self {
            peak_power_w,
            pulse_width_s,
            prf_hz,
            frequency_hz,
            wavelength_m: SPEED_OF_LIGHT / frequency_hz,
        }
    }

    /// Fraction of time transmitting, `tau_p * f_PRF`.
    pub fn duty_cycle(&self) -> f64 {
        self.pulse_width_s * self.prf_hz
    }

    pub fn validate(&self, failures: &mut Vec<String>) {
        for (name, v) in [
            ("peak power", self.peak_power_w),
            ("pulse width", self.pulse_width_s),
            ("PRF", self.prf_hz),
            ("frequency", self.frequency_hz),
            ("wavelength", self.wavelength_m),
        ] {
            if !(v > 0.0) {
                failures.push(format!("{name} must be positive, got {v}"));
            }
        }
        if self.frequency_hz > 0.0 {
            let expect = SPEED_OF_LIGHT / self.frequency_hz;
            if (self.wavelength_m - expect).abs() > 1e-9 * expect {
                failures.push(format!(
                    "wavelength {} m is inconsistent with c/f = {} m",
                    self.wavelength_m, expect
                ));
            }
        }
    }
}

/// Moments of the log of the per-pulse received energy; the hinge between
/// the channel statistics and the kill model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogEnergyParams {
    /// Mean of `ln E_r` \[ln J\].
    pub mu_ln_e: f64,
    /// Variance of `ln E_r`.
    pub sigma2_ln_e: f64,
}

/// Instantaneous received power for a given gain, range, and attenuation:
/// `P_r = P_t G (lambda / 4 pi R)^2 10^(-A/10)`.
pub fn received_power(
    tx: &TransmitterParams,
    gain: f64,
    range_m: f64,
    atten_db: f64,
) -> Result<f64> {
    if !(range_m > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "range must be positive, got {range_m}"
        )));
    }
    let spread = tx.wavelength_m / (4.0 * std::f64::consts::PI * range_m);
    Ok(tx.peak_power_w * gain * spread * spread * (-LN10_OVER_10 * atten_db).exp())
}

/// Energy delivered in one pulse, `E_r = P_r tau_p`.
pub fn pulse_energy(power_w: f64, pulse_width_s: f64) -> f64 {
    power_w * pulse_width_s
}

/// Composes the log-energy moments from the component statistics:
///
/// ```text
/// mu_lnE     = ln(P_t tau_p) - 2 ln(4 pi / lambda) + mu_lnG - 2 mu_lnR - (ln10/10) mu_A
/// sigma2_lnE = sigma2_lnG + 4 sigma2_lnR + (ln10/10)^2 sigma2_A
/// ```
pub fn log_energy_params(
    tx: &TransmitterParams,
    gain: &GainStats,
    range: &RangeStats,
    atten: &AttenuationStats,
) -> LogEnergyParams {
    let deterministic = (tx.peak_power_w * tx.pulse_width_s).ln()
        - 2.0 * (4.0 * std::f64::consts::PI / tx.wavelength_m).ln();
    LogEnergyParams {
        mu_ln_e: deterministic + gain.mu_ln - 2.0 * range.mu_ln - LN10_OVER_10 * atten.mu_a_db,
        sigma2_ln_e: gain.sigma2_ln
            + 4.0 * range.sigma2_ln
            + LN10_OVER_10 * LN10_OVER_10 * atten.sigma2_a_db2,
    }
}

/// Exact mean received energy under the channel closures:
///
/// ```text
/// E_bar = P_t tau_p G0 (1 + 2 k sigma_theta^2)^(-1/2) (lambda / 4 pi)^2
///         exp(-2 mu_lnR + 2 sigma2_lnR)
///         exp(-(ln10/10) mu_A + (ln10/10)^2 sigma2_A / 2)
/// ```
///
/// With all variances zero this reduces to the deterministic pulse energy at
/// the mean range and attenuation.
pub fn mean_received_energy(
    tx: &TransmitterParams,
    antenna: &AntennaParams,
    range: &RangeStats,
    atten: &AttenuationStats,
) -> f64 {
    let g0 = boresight_gain(antenna);
    let k = crate::antenna::beam_sharpness(antenna);
    let jitter_factor =
        (1.0 + 2.0 * k * antenna.jitter_sigma_rad * antenna.jitter_sigma_rad).powf(-0.5);
    let spread = tx.wavelength_m / (4.0 * std::f64::consts::PI);
    tx.peak_power_w
        * tx.pulse_width_s
        * g0
        * jitter_factor
        * spread
        * spread
        * (-2.0 * range.mu_ln + 2.0 * range.sigma2_ln).exp()
        * (-LN10_OVER_10 * atten.mu_a_db
            + 0.5 * LN10_OVER_10 * LN10_OVER_10 * atten.sigma2_a_db2)
            .exp()
}

/// Number of pulses in a dwell, `N = f_PRF T`, kept as a real number for use
/// in the cumulative-kill exponent.
pub fn pulse_count(prf_hz: f64, dwell_s: f64) -> f64 {
    prf_hz * dwell_s
}

// ===========================================================================
// Tests
// ===========================================================================
