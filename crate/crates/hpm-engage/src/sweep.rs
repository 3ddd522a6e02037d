//! One-parameter sweeps over a scenario, producing plot-ready rows.
//!
//! Every grid point is evaluated as a complete modified scenario, so sweep
//! rows are identical to what a single evaluation of the modified
//! configuration would print.

use std::str::FromStr;

use serde::Serialize;

use crate::atmosphere::rain_attenuation_moments;
use crate::error::{Error, Result};
use crate::scenario::{EngagementSummary, Scenario};

/// Parameters the sweep runner can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepParam {
    /// Kill threshold `E_th` \[J\].
    EThreshold,
    /// Peak transmit power \[W\].
    PeakPower,
    /// Aperture diameter \[m\].
    Diameter,
    /// Nominal mean range \[m\].
    MeanRange,
    /// Dwell duration \[s\].
    Dwell,
    /// Pointing jitter \[rad\].
    JitterSigma,
    /// Mean attenuation \[dB\]; realized by adjusting the gaseous specific
    /// attenuation so the evaluated `mu_A` equals the requested value.
    MeanAttenuation,
}

impl SweepParam {
    pub fn label(&self) -> &'static str {
        match self {
            SweepParam::EThreshold => "E_th",
            SweepParam::PeakPower => "P_t",
            SweepParam::Diameter => "D",
            SweepParam::MeanRange => "R_bar",
            SweepParam::Dwell => "T",
            SweepParam::JitterSigma => "sigma_theta",
            SweepParam::MeanAttenuation => "mu_A",
        }
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E_th" => Ok(SweepParam::EThreshold),
            "P_t" => Ok(SweepParam::PeakPower),
            "D" => Ok(SweepParam::Diameter),
            "R_bar" => Ok(SweepParam::MeanRange),
            "T" => Ok(SweepParam::Dwell),
            "sigma_theta" => Ok(SweepParam::JitterSigma),
            "mu_A" => Ok(SweepParam::MeanAttenuation),
            other => Err(Error::InvalidArgument(format!(
                "unknown sweep parameter `{other}`; expected one of E_th, P_t, D, R_bar, T, sigma_theta, mu_A"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepScale {
    Linear,
    Logarithmic,
}

impl FromStr for SweepScale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" | "lin" => Ok(SweepScale::Linear),
            "logarithmic" | "log" => Ok(SweepScale::Logarithmic),
            other => Err(Error::InvalidArgument(format!(
                "unknown scale `{other}`; expected `linear` or `log`"
            ))),
        }
    }
}

/// A one-parameter grid specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParam,
    pub scale: SweepScale,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::InvalidArgument(format!(
                "sweep needs at least 2 points, got {}",
                self.points
            )));
        }
        if !(self.start < self.stop) {
            return Err(Error::InvalidArgument(format!(
                "sweep start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        if self.scale == SweepScale::Logarithmic && !(self.start > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "logarithmic sweeps need a positive start, got {}",
                self.start
            )));
        }
        Ok(())
    }

    /// The evaluation grid, inclusive of both endpoints.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let frac = i as f64 / (n - 1) as f64;
                match self.scale {
                    SweepScale::Linear => self.start + frac * (self.stop - self.start),
                    SweepScale::Logarithmic => {
                        (self.start.ln() + frac * (self.stop.ln() - self.start.ln())).exp()
                    }
                }
            })
            .collect()
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub param_value: f64,
    pub p_kill: f64,
    pub p_tot: f64,
    pub mean_e_j: f64,
    pub mu_ln_e: f64,
    pub sigma2_ln_e: f64,
}

impl SweepRow {
    fn from_summary(param_value: f64, s: &EngagementSummary) -> Self {
        SweepRow {
            param_value,
            p_kill: s.p_kill,
            p_tot: s.p_tot,
            mean_e_j: s.mean_energy_j,
            mu_ln_e: s.log_energy.mu_ln_e,
            sigma2_ln_e: s.log_energy.sigma2_ln_e,
        }
    }
}

/// Builds the modified scenario for one grid point.
pub fn scenario_at(base: &Scenario, param: SweepParam, value: f64) -> Result<Scenario> {
    let mut s = base.clone();
    match param {
        SweepParam::EThreshold => s.kill.e_threshold_j = value,
        SweepParam::PeakPower => s.tx.peak_power_w = value,
        SweepParam::Diameter => s.antenna.diameter_m = value,
        SweepParam::MeanRange => s.range_nominal_m = Some(value),
        SweepParam::Dwell => s.dwell_s = value,
        SweepParam::JitterSigma => s.antenna.jitter_sigma_rad = value,
        SweepParam::MeanAttenuation => {
            // invert mu_A = (gamma_gas + E[gamma_rain] cos(phi)) R/1000 for
            // gamma_gas at the base geometry
            let range = base.range_stats()?;
            let rain_term = match &base.atmosphere.rain {
                Some(_) => {
                    let (mean, _) = rain_attenuation_moments(&base.atmosphere)?;
                    let phi = crate::atmosphere::elevation_angle(base.z_mean()?, range.mean_m)?;
                    mean * phi.cos()
                }
                None => 0.0,
            };
            let gamma_gas = value * 1000.0 / range.mean_m - rain_term;
            if gamma_gas < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "mu_A = {value} dB is unreachable: rain alone contributes more at this geometry"
                )));
            }
            s.atmosphere.gamma_gas_db_per_km = gamma_gas;
        }
    }
    Ok(s)
}

/// Evaluates the scenario across the grid.
pub fn run_sweep(base: &Scenario, spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    base.validate()?;
    let mut rows = Vec::with_capacity(spec.points);
    for value in spec.grid() {
        let scenario = scenario_at(base, spec.parameter, value)?;
        let summary = scenario.evaluate()?;
        rows.push(SweepRow::from_summary(value, &summary));
    }
    Ok(rows)
}

/// CSV rendering with full double precision (17 significant digits).
pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("param_value,p_kill,p_tot,mean_E_J,mu_lnE,sigma2_lnE\n");
    for row in rows {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            row.param_value, row.p_kill, row.p_tot, row.mean_e_j, row.mu_ln_e, row.sigma2_ln_e
        ));
    }
    out
}

// ===========================================================================
// Tests
// ===========================================================================
