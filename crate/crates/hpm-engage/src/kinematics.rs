//! Stochastic target kinematics: position-moment propagation under white
//! acceleration noise, slant-range moments via the delta method, and the
//! log-normal range closure used by the channel model.

use serde::Serialize;

use crate::error::{Error, Result};

/// Coefficient-of-variation bound below which the log-normal range closure
/// is considered trustworthy. Exceeding it is a diagnostic condition, not
/// an error; sweeps may legitimately cross it.
pub const CV2_LOGNORMAL_VALIDITY: f64 = 0.2;

/// Initial target state: position, velocity, and the spectral density root
/// of the isotropic white acceleration noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicState {
    /// Initial position \[m\].
    pub r0: [f64; 3],
    /// Initial velocity \[m/s\].
    pub v0: [f64; 3],
    /// Acceleration noise intensity root \[m/s^2 per sqrt(Hz)\].
    pub sigma_a: f64,
}

impl KinematicState {
    /// Stationary target at the given position, no process noise.
    pub fn fixed(r0: [f64; 3]) -> Self {
        Self {
            r0,
            v0: [0.0; 3],
            sigma_a: 0.0,
        }
    }

    pub fn validate(&self, failures: &mut Vec<String>) {
        if !(self.sigma_a >= 0.0) {
            failures.push(format!("sigma_a must be >= 0, got {}", self.sigma_a));
        }
        if self.r0.iter().chain(&self.v0).any(|c| !c.is_finite()) {
            failures.push("kinematic state has non-finite components".into());
        }
    }
}

/// First two moments of the position at a given time: mean vector and the
/// isotropic covariance scale `s` such that `P_rr = s * I3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionMoments {
    /// Mean position \[m\].
    pub mean_r: [f64; 3],
    /// Isotropic position variance per axis \[m^2\].
    pub cov_scale: f64,
}

/// Slant-range statistics: delta-method mean/variance plus the parameters of
/// the moment-matched log-normal closure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RangeStats {
    /// Mean slant range \[m\].
    pub mean_m: f64,
    /// Range variance \[m^2\].
    pub var_m2: f64,
    /// Squared coefficient of variation, `var / mean^2`.
    pub cv2: f64,
    /// Mean of `ln R` under the log-normal closure.
    pub mu_ln: f64,
    /// Variance of `ln R` under the log-normal closure.
    pub sigma2_ln: f64,
}

impl RangeStats {
    /// True when the closure operates inside its stated validity envelope.
    pub fn within_lognormal_validity(&self) -> bool {
        self.cv2 <= CV2_LOGNORMAL_VALIDITY
    }
}

fn norm_squared(v: &[f64; 3]) -> f64 {
    v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
}

/// Mean position at time `t`: `r0 + v0 * t`.
pub fn propagate_mean(state: &KinematicState, t: f64) -> Result<[f64; 3]> {
    if !(t >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "propagation time must be >= 0, got {t}"
        )));
    }
    Ok([
        state.r0[0] + state.v0[0] * t,
        state.r0[1] + state.v0[1] * t,
        state.r0[2] + state.v0[2] * t,
    ])
}

/// Position moments at time `t`. The isotropic covariance scale integrates
/// the white acceleration noise: `s(t) = sigma_a^2 t^3 / 3`.
pub fn position_covariance(state: &KinematicState, t: f64) -> Result<PositionMoments> {
    let mean_r = propagate_mean(state, t)?;
    let cov_scale = state.sigma_a * state.sigma_a * t * t * t / 3.0;
    Ok(PositionMoments { mean_r, cov_scale })
}

/// Second raw moment of the slant range: `E[R^2] = tr(P_rr) + |mean_r|^2`.
pub fn range_second_moment(pm: &PositionMoments) -> f64 {
    3.0 * pm.cov_scale + norm_squared(&pm.mean_r)
}

/// Delta-method mean and variance of the slant range.
///
/// With `m2 = tr(P) + |r|^2` and `v2 = tr(P^2) + 4 r' P r`, which for the
/// isotropic covariance reduce to `m2 = 3s + |r|^2`, `v2 = 3s^2 + 4s|r|^2`:
///
/// ```text
/// mean_R = sqrt(m2) - v2 / (8 m2^(3/2))
/// var_R  = v2 / (4 m2)
/// ```
///
/// Valid while the relative range spread is modest; `cv2` in the resulting
/// [`RangeStats`] tracks that.
pub fn range_moments_delta(pm: &PositionMoments) -> Result<(f64, f64)> {
    let s = pm.cov_scale;
    let r2 = norm_squared(&pm.mean_r);
    let m2 = 3.0 * s + r2;
    if m2 <= 0.0 {
        return Err(Error::Geometry(
            "range moments are undefined for zero mean position and zero spread".into(),
        ));
    }
    let v2 = 3.0 * s * s + 4.0 * s * r2;
    let mean = m2.sqrt() - v2 / (8.0 * m2 * m2.sqrt());
    let var = v2 / (4.0 * m2);
    Ok((mean, var))
}

/// Moment-matched log-normal fit of the slant range:
///
/// ```text
/// cv2       = var / mean^2
/// sigma2_ln = ln(1 + cv2)
/// mu_ln     = ln(mean) - sigma2_ln / 2
/// ```
///
/// Exactly reproduces the input mean and variance. When `cv2` exceeds
/// [`CV2_LOGNORMAL_VALIDITY`] the fit still proceeds; callers surface the
/// diagnostic through scenario validation.
pub fn lognormal_fit_range(mean_m: f64, var_m2: f64) -> Result<RangeStats> {
    if !(mean_m > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "range mean must be positive, got {mean_m}"
        )));
    }
    if !(var_m2 >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "range variance must be >= 0, got {var_m2}"
        )));
    }
    let cv2 = var_m2 / (mean_m * mean_m);
    let sigma2_ln = cv2.ln_1p();
    let mu_ln = mean_m.ln() - 0.5 * sigma2_ln;
    Ok(RangeStats {
        mean_m,
        var_m2,
        cv2,
        mu_ln,
        sigma2_ln,
    })
}

// ===========================================================================
// Tests
// ===========================================================================
