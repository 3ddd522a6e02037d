//! The aggregate engagement description: every parameter group in one
//! validated, immutable value, plus the end-to-end evaluation that chains
//! kinematics -> antenna -> atmosphere -> link -> kill.

use serde::Serialize;

use crate::antenna::{critical_diameter, jitter_gain_stats, AntennaParams, GainStats};
use crate::atmosphere::{attenuation_stats, AtmosphereParams, AttenuationStats};
use crate::error::{Error, Result};
use crate::kill::{cumulative_kill_probability, mean_kill_probability, KillModel};
use crate::kinematics::{
    lognormal_fit_range, position_covariance, propagate_mean, range_moments_delta,
    KinematicState, RangeStats, CV2_LOGNORMAL_VALIDITY,
};
use crate::link::{
    log_energy_params, mean_received_energy, LogEnergyParams, TransmitterParams,
    DUTY_CYCLE_LIMIT,
};
use crate::numerics::{gauss_hermite, DEFAULT_GH_ORDER, MAX_GH_ORDER};

/// Full engagement parameter set. Construct, then [`Scenario::validate`]
/// before use; evaluation is deterministic and total on validated scenarios.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub tx: TransmitterParams,
    pub antenna: AntennaParams,
    pub kinematics: KinematicState,
    /// Nominal slant range shortcut \[m\]: when set, it overrides the
    /// kinematic initial position with `(R, 0, 0)`. Table-style scenarios
    /// give only a nominal range.
    pub range_nominal_m: Option<f64>,
    /// Time at which range statistics are frozen for the dwell \[s\].
    pub eval_time_s: f64,
    pub atmosphere: AtmosphereParams,
    pub kill: KillModel,
    /// Dwell (continuous illumination) duration \[s\].
    pub dwell_s: f64,
    /// Gauss-Hermite order for the kill-probability average.
    pub gh_order: usize,
}

/// Soft diagnostic conditions recorded by validation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Warning {
    /// Duty cycle above the thermal-feasibility bound.
    DutyCycle { duty_cycle: f64 },
    /// Range coefficient of variation beyond the log-normal closure's
    /// validity envelope.
    RangeSpread { cv2: f64 },
    /// Mean vertical offset exceeds the mean range; evaluation would fail.
    ElevationDomain { z_mean_m: f64, mean_range_m: f64 },
    /// Logistic argument saturates at the mean energy.
    LogisticSaturation { argument: f64 },
    /// Aperture beyond the critical diameter: jitter erases further gain.
    JitterDominatedAperture { diameter_m: f64, critical_m: f64 },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::DutyCycle { duty_cycle } => write!(
                f,
                "duty cycle {duty_cycle:.3} exceeds {DUTY_CYCLE_LIMIT}; thermal feasibility is doubtful"
            ),
            Warning::RangeSpread { cv2 } => write!(
                f,
                "range cv^2 = {cv2:.3} exceeds {CV2_LOGNORMAL_VALIDITY}; log-normal range closure is outside its validity envelope"
            ),
            Warning::ElevationDomain {
                z_mean_m,
                mean_range_m,
            } => write!(
                f,
                "|z| = {z_mean_m} m exceeds mean range {mean_range_m} m; elevation angle is undefined"
            ),
            Warning::LogisticSaturation { argument } => write!(
                f,
                "logistic argument {argument:.1} at the mean energy is saturated"
            ),
            Warning::JitterDominatedAperture {
                diameter_m,
                critical_m,
            } => write!(
                f,
                "aperture {diameter_m} m exceeds the critical diameter {critical_m:.2} m; gain is jitter-limited"
            ),
        }
    }
}

/// Everything the pipeline derives for one engagement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EngagementSummary {
    pub range: RangeStats,
    pub gain: GainStats,
    pub atten: AttenuationStats,
    pub log_energy: LogEnergyParams,
    /// Closed-form mean received energy per pulse \[J\].
    pub mean_energy_j: f64,
    /// Mean per-pulse neutralization probability.
    pub p_kill: f64,
    /// Cumulative neutralization probability over the dwell.
    pub p_tot: f64,
}

impl Scenario {
    /// The reference engagement: 200 kW peak, 0.5 us pulses at 1 kHz,
    /// 2.45 GHz, 1.5 m aperture, 1 mrad jitter, 1 km nominal range,
    /// 0.2 dB/km gaseous attenuation, 1e-2 J threshold, slope 50/J,
    /// 0.1 s dwell.
    pub fn baseline() -> Self {
        Scenario {
            tx: TransmitterParams::from_frequency(200e3, 0.5e-6, 1000.0, 2.45e9),
            antenna: AntennaParams {
                diameter_m: 1.5,
                wavelength_m: crate::link::SPEED_OF_LIGHT / 2.45e9,
                aperture_efficiency: 1.0,
                jitter_sigma_rad: 1e-3,
            },
            kinematics: KinematicState::fixed([1000.0, 0.0, 0.0]),
            range_nominal_m: Some(1000.0),
            eval_time_s: 0.0,
            atmosphere: AtmosphereParams::gaseous(0.2),
            kill: KillModel {
                e_threshold_j: 1e-2,
                slope_per_j: 50.0,
            },
            dwell_s: 0.1,
            gh_order: DEFAULT_GH_ORDER,
        }
    }

    /// Kinematics with the nominal-range override applied: an explicit
    /// nominal range replaces the initial position with `(R, 0, 0)`.
    pub fn effective_kinematics(&self) -> KinematicState {
        match self.range_nominal_m {
            Some(r) => KinematicState {
                r0: [r, 0.0, 0.0],
                ..self.kinematics
            },
            None => self.kinematics,
        }
    }

    /// Range statistics at the evaluation time.
    pub fn range_stats(&self) -> Result<RangeStats> {
        let kin = self.effective_kinematics();
        let pm = position_covariance(&kin, self.eval_time_s)?;
        let (mean, var) = range_moments_delta(&pm)?;
        lognormal_fit_range(mean, var)
    }

    /// Mean vertical offset at the evaluation time \[m\].
    pub fn z_mean(&self) -> Result<f64> {
        Ok(propagate_mean(&self.effective_kinematics(), self.eval_time_s)?[2])
    }

    /// Checks hard invariants and collects soft diagnostics.
    ///
    /// Hard violations (non-positive physical quantities, wavelength
    /// inconsistent with the carrier, degenerate geometry) produce a
    /// validation error listing every failure; soft conditions come back as
    /// warnings.
    pub fn validate(&self) -> Result<Vec<Warning>> {
        let mut failures = Vec::new();
        self.tx.validate(&mut failures);
        self.antenna.validate(&mut failures);
        self.kinematics.validate(&mut failures);
        self.atmosphere.validate(&mut failures);
        self.kill.validate(&mut failures);
        if (self.antenna.wavelength_m - self.tx.wavelength_m).abs()
            > 1e-9 * self.tx.wavelength_m
        {
            failures.push(format!(
                "antenna wavelength {} m differs from transmitter wavelength {} m",
                self.antenna.wavelength_m, self.tx.wavelength_m
            ));
        }
        if let Some(r) = self.range_nominal_m {
            if !(r > 0.0) {
                failures.push(format!("nominal range must be positive, got {r}"));
            }
        }
        if !(self.eval_time_s >= 0.0) {
            failures.push(format!("evaluation time must be >= 0, got {}", self.eval_time_s));
        }
        if !(self.dwell_s >= 0.0) {
            failures.push(format!("dwell must be >= 0, got {}", self.dwell_s));
        }
        if self.gh_order == 0 || self.gh_order > MAX_GH_ORDER {
            failures.push(format!(
                "Gauss-Hermite order must be in [1, {MAX_GH_ORDER}], got {}",
                self.gh_order
            ));
        }
        if failures.is_empty() {
            // geometry is a hard requirement too
            if let Err(e) = self.range_stats() {
                failures.push(e.to_string());
            }
        }
        if !failures.is_empty() {
            return Err(Error::Validation(failures));
        }

        let mut warnings = Vec::new();
        let duty = self.tx.duty_cycle();
        if duty > DUTY_CYCLE_LIMIT {
            warnings.push(Warning::DutyCycle { duty_cycle: duty });
        }
        let range = self.range_stats()?;
        if !range.within_lognormal_validity() {
            warnings.push(Warning::RangeSpread { cv2: range.cv2 });
        }
        let z = self.z_mean()?;
        if z.abs() > range.mean_m {
            warnings.push(Warning::ElevationDomain {
                z_mean_m: z,
                mean_range_m: range.mean_m,
            });
        } else {
            let atten = attenuation_stats(&self.atmosphere, &range, z)?;
            let mean_e = mean_received_energy(&self.tx, &self.antenna, &range, &atten);
            let argument = self.kill.slope_per_j * mean_e;
            if argument > 700.0 {
                warnings.push(Warning::LogisticSaturation { argument });
            }
        }
        if self.antenna.jitter_sigma_rad > 0.0 {
            let critical =
                critical_diameter(self.antenna.wavelength_m, self.antenna.jitter_sigma_rad)?;
            if self.antenna.diameter_m > critical {
                warnings.push(Warning::JitterDominatedAperture {
                    diameter_m: self.antenna.diameter_m,
                    critical_m: critical,
                });
            }
        }
        Ok(warnings)
    }

    /// Runs the full analytic pipeline and exposes every intermediate
    /// statistic along with the per-pulse and cumulative kill probabilities.
    pub fn evaluate(&self) -> Result<EngagementSummary> {
        let range = self.range_stats()?;
        let gain = jitter_gain_stats(&self.antenna);
        let atten = attenuation_stats(&self.atmosphere, &range, self.z_mean()?)?;
        let log_energy = log_energy_params(&self.tx, &gain, &range, &atten);
        let mean_energy_j = mean_received_energy(&self.tx, &self.antenna, &range, &atten);
        let rule = gauss_hermite(self.gh_order)?;
        let p_kill = mean_kill_probability(&log_energy, &self.kill, &rule);
        let p_tot = cumulative_kill_probability(p_kill, self.tx.prf_hz, self.dwell_s);
        Ok(EngagementSummary {
            range,
            gain,
            atten,
            log_energy,
            mean_energy_j,
            p_kill,
            p_tot,
        })
    }
}

// ===========================================================================
// Tests
// ===========================================================================
