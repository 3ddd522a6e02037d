//! Closed-form normalized sensitivities (elasticities) of the mean received
//! energy, validated against central finite differences taken through the
//! full analytic pipeline.
//!
//! Elasticities are `S = d ln(E_bar) / d ln(param)` for the multiplicative
//! parameters. The two attenuation rows use the per-dB convention
//! `d ln(E_bar) / d mu_A` and `d ln(E_bar) / d sigma_A^2`: the attenuation
//! moments enter the mean energy as additive arguments of its final
//! exponential, so only that reading yields the constant closed forms
//! `-ln10/10` and `(ln10/10)^2 / 2`.

use serde::Serialize;
use std::str::FromStr;

use crate::antenna::beam_sharpness;
use crate::atmosphere::attenuation_stats;
use crate::error::{Error, Result};
use crate::kinematics::RangeStats;
use crate::link::mean_received_energy;
use crate::scenario::Scenario;

const LN10_OVER_10: f64 = core::f64::consts::LN_10 / 10.0;

/// Parameters with closed-form elasticities of the mean received energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ElasticityParam {
    /// Peak transmit power.
    PeakPower,
    /// Pulse width.
    PulseWidth,
    /// Aperture diameter (gain and beam-sharpness coupling included).
    Diameter,
    /// Pointing-jitter standard deviation.
    JitterSigma,
    /// Mean slant range, holding the log-range variance and the attenuation
    /// moments fixed (the pure inverse-square row).
    MeanRange,
    /// Mean attenuation in dB (per-dB semi-elasticity).
    MeanAttenuation,
    /// Attenuation variance in dB^2 (per-dB^2 semi-elasticity).
    AttenuationVariance,
}

impl ElasticityParam {
    pub const ALL: [ElasticityParam; 7] = [
        ElasticityParam::PeakPower,
        ElasticityParam::PulseWidth,
        ElasticityParam::Diameter,
        ElasticityParam::JitterSigma,
        ElasticityParam::MeanRange,
        ElasticityParam::MeanAttenuation,
        ElasticityParam::AttenuationVariance,
    ];

    /// Short identifier used in reports and on the command line.
    pub fn label(&self) -> &'static str {
        match self {
            ElasticityParam::PeakPower => "P_t",
            ElasticityParam::PulseWidth => "tau_p",
            ElasticityParam::Diameter => "D",
            ElasticityParam::JitterSigma => "sigma_theta",
            ElasticityParam::MeanRange => "R_bar",
            ElasticityParam::MeanAttenuation => "mu_A",
            ElasticityParam::AttenuationVariance => "sigma_A2",
        }
    }

    /// True for the two per-dB rows, which are not dimensionless
    /// elasticities.
    pub fn per_db(&self) -> bool {
        self.unit_note().is_some()
    }

    /// Unit annotation for the semi-elasticity rows.
    pub fn unit_note(&self) -> Option<&'static str> {
        match self {
            ElasticityParam::MeanAttenuation => Some("per dB"),
            ElasticityParam::AttenuationVariance => Some("per dB^2"),
            _ => None,
        }
    }
}

impl FromStr for ElasticityParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P_t" => Ok(ElasticityParam::PeakPower),
            "tau_p" => Ok(ElasticityParam::PulseWidth),
            "D" => Ok(ElasticityParam::Diameter),
            "sigma_theta" => Ok(ElasticityParam::JitterSigma),
            "R_bar" => Ok(ElasticityParam::MeanRange),
            "mu_A" => Ok(ElasticityParam::MeanAttenuation),
            "sigma_A2" => Ok(ElasticityParam::AttenuationVariance),
            other => Err(Error::InvalidArgument(format!(
                "unknown elasticity parameter `{other}`; expected one of P_t, tau_p, D, sigma_theta, R_bar, mu_A, sigma_A2"
            ))),
        }
    }
}

/// One row of the sensitivity table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElasticityRow {
    pub param: ElasticityParam,
    pub analytic: f64,
    pub finite_difference: f64,
    pub abs_gap: f64,
}

/// Analytic-vs-finite-difference sensitivity table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElasticityReport {
    pub rows: Vec<ElasticityRow>,
    /// Finite-difference elasticity of the mean range with the attenuation
    /// recomputed from the scaled range (range-attenuation coupling
    /// included). Reported separately; the `R_bar` row holds attenuation
    /// fixed.
    pub range_total_fd: f64,
    pub rel_step: f64,
}

/// Closed-form elasticity at the scenario's operating point:
///
/// ```text
/// S_Pt = S_tau = 1        S_Rbar = -2
/// S_muA = -ln10/10        S_sigmaA2 = (ln10/10)^2 / 2
/// S_D = 2 - 2k s^2/(1 + 2k s^2)     S_sigma = -2k s^2/(1 + 2k s^2)
/// ```
pub fn analytic_elasticity(scenario: &Scenario, param: ElasticityParam) -> f64 {
    match param {
        ElasticityParam::PeakPower | ElasticityParam::PulseWidth => 1.0,
        ElasticityParam::MeanRange => -2.0,
        ElasticityParam::MeanAttenuation => -LN10_OVER_10,
        ElasticityParam::AttenuationVariance => 0.5 * LN10_OVER_10 * LN10_OVER_10,
        ElasticityParam::Diameter => 2.0 - jitter_coupling(scenario),
        ElasticityParam::JitterSigma => -jitter_coupling(scenario),
    }
}

fn jitter_coupling(scenario: &Scenario) -> f64 {
    let k = beam_sharpness(&scenario.antenna);
    let s2 = scenario.antenna.jitter_sigma_rad * scenario.antenna.jitter_sigma_rad;
    2.0 * k * s2 / (1.0 + 2.0 * k * s2)
}

fn check_step(rel_step: f64) -> Result<()> {
    if !(rel_step > 0.0 && rel_step <= 0.1) {
        return Err(Error::InvalidArgument(format!(
            "relative step must be in (0, 0.1], got {rel_step}"
        )));
    }
    Ok(())
}

fn scaled_range(range: &RangeStats, factor: f64) -> RangeStats {
    // move mu_ln = ln(mean) while holding sigma2_ln (hence cv2) fixed
    RangeStats {
        mean_m: range.mean_m * factor,
        var_m2: range.var_m2 * factor * factor,
        cv2: range.cv2,
        mu_ln: range.mu_ln + factor.ln(),
        sigma2_ln: range.sigma2_ln,
    }
}

/// Central finite-difference estimate of one elasticity, evaluated through
/// [`mean_received_energy`].
///
/// Multiplicative parameters use the log-log difference
/// `[ln E(x(1+h)) - ln E(x(1-h))] / [ln(1+h) - ln(1-h)]`; the per-dB rows
/// perturb their moment additively by `rel_step` and divide by the step.
pub fn finite_difference_elasticity(
    scenario: &Scenario,
    param: ElasticityParam,
    rel_step: f64,
) -> Result<f64> {
    check_step(rel_step)?;
    let h = rel_step;

    let range = scenario.range_stats()?;
    let atten = attenuation_stats(&scenario.atmosphere, &range, scenario.z_mean()?)?;
    let ln_mean_e = |s: &Scenario| -> Result<f64> {
        let r = s.range_stats()?;
        let a = attenuation_stats(&s.atmosphere, &r, s.z_mean()?)?;
        Ok(mean_received_energy(&s.tx, &s.antenna, &r, &a).ln())
    };

    match param {
        ElasticityParam::PeakPower
        | ElasticityParam::PulseWidth
        | ElasticityParam::Diameter
        | ElasticityParam::JitterSigma => {
            let apply = |factor: f64| -> Scenario {
                let mut s = scenario.clone();
                match param {
                    ElasticityParam::PeakPower => s.tx.peak_power_w *= factor,
                    ElasticityParam::PulseWidth => s.tx.pulse_width_s *= factor,
                    ElasticityParam::Diameter => s.antenna.diameter_m *= factor,
                    ElasticityParam::JitterSigma => s.antenna.jitter_sigma_rad *= factor,
                    _ => unreachable!(),
                }
                s
            };
            let up = ln_mean_e(&apply(1.0 + h))?;
            let down = ln_mean_e(&apply(1.0 - h))?;
            Ok((up - down) / ((1.0 + h).ln() - (1.0 - h).ln()))
        }
        ElasticityParam::MeanRange => {
            let up = mean_received_energy(
                &scenario.tx,
                &scenario.antenna,
                &scaled_range(&range, 1.0 + h),
                &atten,
            )
            .ln();
            let down = mean_received_energy(
                &scenario.tx,
                &scenario.antenna,
                &scaled_range(&range, 1.0 - h),
                &atten,
            )
            .ln();
            Ok((up - down) / ((1.0 + h).ln() - (1.0 - h).ln()))
        }
        ElasticityParam::MeanAttenuation => {
            let mut up = atten;
            up.mu_a_db += h;
            let mut down = atten;
            down.mu_a_db -= h;
            let e_up = mean_received_energy(&scenario.tx, &scenario.antenna, &range, &up).ln();
            let e_down =
                mean_received_energy(&scenario.tx, &scenario.antenna, &range, &down).ln();
            Ok((e_up - e_down) / (2.0 * h))
        }
        ElasticityParam::AttenuationVariance => {
            let mut up = atten;
            up.sigma2_a_db2 += h;
            let mut down = atten;
            down.sigma2_a_db2 -= h;
            let e_up = mean_received_energy(&scenario.tx, &scenario.antenna, &range, &up).ln();
            let e_down =
                mean_received_energy(&scenario.tx, &scenario.antenna, &range, &down).ln();
            Ok((e_up - e_down) / (2.0 * h))
        }
    }
}

/// Finite-difference range elasticity with the attenuation recomputed from
/// the scaled range, i.e. the inverse-square law plus the range-attenuation
/// coupling. The vertical offset scales with the range so the elevation
/// angle stays fixed.
pub fn range_total_elasticity_fd(scenario: &Scenario, rel_step: f64) -> Result<f64> {
    check_step(rel_step)?;
    let h = rel_step;
    let range = scenario.range_stats()?;
    let z = scenario.z_mean()?;
    let ln_e = |factor: f64| -> Result<f64> {
        let r = scaled_range(&range, factor);
        let a = attenuation_stats(&scenario.atmosphere, &r, z * factor)?;
        Ok(mean_received_energy(&scenario.tx, &scenario.antenna, &r, &a).ln())
    };
    Ok((ln_e(1.0 + h)? - ln_e(1.0 - h)?) / ((1.0 + h).ln() - (1.0 - h).ln()))
}

/// Builds the full analytic-vs-finite-difference table.
pub fn elasticity_report(scenario: &Scenario, rel_step: f64) -> Result<ElasticityReport> {
    check_step(rel_step)?;
    let mut rows = Vec::with_capacity(ElasticityParam::ALL.len());
    for param in ElasticityParam::ALL {
        let analytic = analytic_elasticity(scenario, param);
        let finite_difference = finite_difference_elasticity(scenario, param, rel_step)?;
        rows.push(ElasticityRow {
            param,
            analytic,
            finite_difference,
            abs_gap: (analytic - finite_difference).abs(),
        });
    }
    Ok(ElasticityReport {
        rows,
        range_total_fd: range_total_elasticity_fd(scenario, rel_step)?,
        rel_step,
    })
}

// ===========================================================================
// Tests
// ===========================================================================
