//! Aperture gain, Gaussian near-boresight beam pattern, jitter-averaged
//! effective gain statistics, and the critical aperture diameter beyond
//! which pointing jitter erases further gain.

use serde::Serialize;

use crate::error::{Error, Result};

/// 3-dB beamwidth coefficient for a uniformly illuminated circular aperture:
/// `theta_3dB = 0.886 lambda / D`.
pub const BEAMWIDTH_COEFF: f64 = 0.886;

/// Critical-diameter coefficient: `D_crit = 0.376 lambda / sigma_theta`.
pub const CRITICAL_DIAMETER_COEFF: f64 = 0.376;

/// Transmit aperture and pointing-jitter parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaParams {
    /// Aperture diameter \[m\].
    pub diameter_m: f64,
    /// Carrier wavelength \[m\].
    pub wavelength_m: f64,
    /// Aperture efficiency in (0, 1].
    pub aperture_efficiency: f64,
    /// Pointing-jitter standard deviation \[rad\].
    pub jitter_sigma_rad: f64,
}

impl AntennaParams {
    pub fn validate(&self, failures: &mut Vec<String>) {
        if !(self.diameter_m > 0.0) {
            failures.push(format!("antenna diameter must be > 0, got {}", self.diameter_m));
        }
        if !(self.wavelength_m > 0.0) {
            failures.push(format!("wavelength must be > 0, got {}", self.wavelength_m));
        }
        if !(self.aperture_efficiency > 0.0 && self.aperture_efficiency <= 1.0) {
            failures.push(format!(
                "aperture efficiency must be in (0, 1], got {}",
                self.aperture_efficiency
            ));
        }
        if !(self.jitter_sigma_rad >= 0.0) {
            failures.push(format!(
                "jitter sigma must be >= 0, got {}",
                self.jitter_sigma_rad
            ));
        }
    }

    /// 3-dB beamwidth \[rad\].
    pub fn theta_3db(&self) -> f64 {
        BEAMWIDTH_COEFF * self.wavelength_m / self.diameter_m
    }
}

/// Jitter-averaged gain statistics and their log-normal closure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GainStats {
    /// Boresight power gain (dimensionless).
    pub g0: f64,
    /// Beam sharpness `k` \[rad^-2\] in `G(theta) = G0 exp(-k theta^2)`.
    pub k_sharp: f64,
    /// Jitter-averaged mean gain `E[G]`.
    pub mean: f64,
    /// Jitter-induced gain variance `Var[G]`.
    pub var: f64,
    /// Log-normal closure location.
    pub mu_ln: f64,
    /// Log-normal closure variance, `ln(1 + 2 k sigma^2)`.
    pub sigma2_ln: f64,
}

/// Boresight aperture gain `eta * (pi D / lambda)^2`, i.e. the standard
/// `eta * 4 pi A / lambda^2` for a circular aperture of area `pi D^2 / 4`.
pub fn boresight_gain(p: &AntennaParams) -> f64 {
    let ratio = std::f64::consts::PI * p.diameter_m / p.wavelength_m;
    p.aperture_efficiency * ratio * ratio
}

/// Beam sharpness `k = 4 ln 2 / theta_3dB^2` \[rad^-2\].
pub fn beam_sharpness(p: &AntennaParams) -> f64 {
    let theta = p.theta_3db();
    4.0 * std::f64::consts::LN_2 / (theta * theta)
}

/// Gaussian near-boresight pattern `G(theta) = G0 exp(-k theta^2)`.
pub fn gain_at_angle(g0: f64, k_sharp: f64, theta_rad: f64) -> f64 {
    g0 * (-k_sharp * theta_rad * theta_rad).exp()
}

/// Jitter-averaged gain statistics for `theta ~ Normal(0, sigma^2)`:
///
/// ```text
/// E[G]   = G0 (1 + 2 k sigma^2)^(-1/2)            (exact Gaussian integral)
/// Var[G] = G0^2 [(1 + 4 k sigma^2)^(-1/2) - (1 + 2 k sigma^2)^(-1)]
/// ```
///
/// plus the log-normal closure `mu_ln = ln G0 - ln(1 + 2 k sigma^2)/2`,
/// `sigma2_ln = ln(1 + 2 k sigma^2)`. The closure is a modeling surrogate
/// for the random per-pulse gain; the Monte Carlo module quantifies its
/// error rather than hiding it.
pub fn jitter_gain_stats(p: &AntennaParams) -> GainStats {
    let g0 = boresight_gain(p);
    let k = beam_sharpness(p);
    let x = 2.0 * k * p.jitter_sigma_rad * p.jitter_sigma_rad;
    let mean = g0 / (1.0 + x).sqrt();
    let var = g0 * g0 * ((1.0 + 2.0 * x).powf(-0.5) - 1.0 / (1.0 + x));
    let sigma2_ln = x.ln_1p();
    let mu_ln = g0.ln() - 0.5 * sigma2_ln;
    GainStats {
        g0,
        k_sharp: k,
        mean,
        // clamp tiny negative round-off when sigma ~ 0
        var: var.max(0.0),
        mu_ln,
        sigma2_ln,
    }
}

/// Aperture diameter beyond which pointing jitter erases further gain:
/// `D_crit = 0.376 lambda / sigma_theta`.
pub fn critical_diameter(wavelength_m: f64, jitter_sigma_rad: f64) -> Result<f64> {
    if !(jitter_sigma_rad > 0.0) {
        return Err(Error::InvalidArgument(
            "critical diameter is unbounded for zero pointing jitter".into(),
        ));
    }
    Ok(CRITICAL_DIAMETER_COEFF * wavelength_m / jitter_sigma_rad)
}

// ===========================================================================
// Tests
// ===========================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::stream_rng;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand_distr::{Distribution, Normal};

    fn params(diameter: f64, wavelength: f64, jitter: f64) -> AntennaParams {
        AntennaParams {
            diameter_m: diameter,
            wavelength_m: wavelength,
            aperture_efficiency: 1.0,
            jitter_sigma_rad: jitter,
        }
    }

    #[test]
    fn boresight_gain_reference_aperture() {
        // 1.5 m dish at lambda = 0.122 m, unit efficiency.
        let g0 = boresight_gain(&params(1.5, 0.122, 0.0));
        let expect = (std::f64::consts::PI * 1.5 / 0.122).powi(2);
        assert_relative_eq!(g0, expect, max_relative = 1e-15);
        assert!((g0 - 1492.0).abs() < 1.0, "g0 = {g0}");
    }

    #[test]
    fn boresight_gain_unit_aperture() {
        let g0 = boresight_gain(&params(0.122 / std::f64::consts::PI, 0.122, 0.0));
        assert_relative_eq!(g0, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn boresight_gain_quadratic_in_diameter() {
        let g1 = boresight_gain(&params(1.5, 0.122, 0.0));
        let g2 = boresight_gain(&params(3.0, 0.122, 0.0));
        assert_relative_eq!(g2 / g1, 4.0, max_relative = 1e-14);
    }

    #[test]
    fn beam_sharpness_reference() {
        let p = params(1.5, 0.122, 0.0);
        assert_abs_diff_eq!(p.theta_3db(), 0.886 * 0.122 / 1.5, epsilon = 1e-15);
        let k = beam_sharpness(&p);
        assert!((k - 534.0).abs() < 1.0, "k = {k}");
    }

    #[test]
    fn beam_sharpness_scales_with_diameter_squared() {
        let k1 = beam_sharpness(&params(1.5, 0.122, 0.0));
        let k2 = beam_sharpness(&params(3.0, 0.122, 0.0));
        assert_relative_eq!(k2 / k1, 4.0, max_relative = 1e-14);
    }

    #[test]
    fn beamwidth_reconstructs_from_sharpness() {
        let p = params(2.2, 0.09, 0.0);
        let k = beam_sharpness(&p);
        let theta_back = 2.0 * (std::f64::consts::LN_2 / k).sqrt();
        assert_relative_eq!(theta_back, p.theta_3db(), max_relative = 1e-12);
    }

    #[test]
    fn pattern_boresight_halfpower_and_symmetry() {
        let p = params(1.5, 0.122, 0.0);
        let g0 = boresight_gain(&p);
        let k = beam_sharpness(&p);
        assert_eq!(gain_at_angle(g0, k, 0.0), g0);
        let half = gain_at_angle(g0, k, p.theta_3db() / 2.0);
        assert_relative_eq!(half, g0 / 2.0, max_relative = 1e-12);
        // -3.0103 dB at the half-beamwidth
        let db = 10.0 * (half / g0).log10();
        assert_abs_diff_eq!(db, -3.010_299_956_639_812, epsilon = 1e-9);
        assert_eq!(
            gain_at_angle(g0, k, 0.0123),
            gain_at_angle(g0, k, -0.0123)
        );
    }

    #[test]
    fn jitterless_stats_collapse_to_boresight() {
        let gs = jitter_gain_stats(&params(1.5, 0.122, 0.0));
        assert_eq!(gs.mean, gs.g0);
        assert_eq!(gs.var, 0.0);
        assert_eq!(gs.sigma2_ln, 0.0);
        assert_eq!(gs.mu_ln, gs.g0.ln());
    }

    #[test]
    fn jitter_stats_reference_point() {
        let p = params(1.5, 0.122, 1e-3);
        let gs = jitter_gain_stats(&p);
        let x = 2.0 * gs.k_sharp * 1e-6;
        assert_relative_eq!(gs.mean, gs.g0 * (1.0 + x).powf(-0.5), max_relative = 1e-15);
        // ratio ~ 0.99947 at the reference geometry
        assert!((gs.mean / gs.g0 - 0.99947).abs() < 5e-5);
    }

    #[test]
    fn jitter_stats_match_mc_over_sigma_grid() {
        // E[G] and Var[G] are exact Gaussian integrals, so MC agreement at
        // 3 SE is a strict correctness check.
        let n = 1_000_000;
        let normal = Normal::new(0.0, 1.0).unwrap();
        for (i, &sigma_mrad) in [0.1, 1.0, 5.0, 20.0].iter().enumerate() {
            let sigma = sigma_mrad * 1e-3;
            let p = params(1.5, 0.122, sigma);
            let gs = jitter_gain_stats(&p);
            let mut rng = stream_rng(101, i as u64);
            let mut sum = 0.0;
            let mut sum2 = 0.0;
            for _ in 0..n {
                let theta = sigma * normal.sample(&mut rng);
                let g = gain_at_angle(gs.g0, gs.k_sharp, theta);
                sum += g;
                sum2 += g * g;
            }
            let mc_mean = sum / n as f64;
            let mc_var = sum2 / n as f64 - mc_mean * mc_mean;
            let se_mean = (mc_var / n as f64).sqrt();
            assert!(
                (gs.mean - mc_mean).abs() < 3.0 * se_mean,
                "sigma={sigma_mrad} mrad: mean {} vs MC {mc_mean} (3SE {:.3e})",
                gs.mean,
                3.0 * se_mean
            );
            // crude 4th-moment SE bound for the variance estimator
            let se_var = mc_var * (3.0 / n as f64).sqrt() * 3.0;
            assert!(
                (gs.var - mc_var).abs() < 3.0 * se_var.max(1e-12),
                "sigma={sigma_mrad} mrad: var {} vs MC {mc_var}",
                gs.var
            );
        }
    }

    #[test]
    fn mean_gain_strictly_decreasing_in_jitter() {
        let mut last = f64::INFINITY;
        for i in 0..40 {
            let sigma = 1e-5 * (i as f64 + 1.0) * 50.0;
            let gs = jitter_gain_stats(&params(1.5, 0.122, sigma));
            assert!(gs.mean < last, "mean gain not decreasing at sigma={sigma}");
            last = gs.mean;
        }
    }

    #[test]
    fn gain_variance_nonnegative_on_grid() {
        for &d in &[0.2, 1.5, 4.0] {
            for &lam in &[0.03, 0.122, 0.3] {
                for &sigma in &[0.0, 1e-5, 1e-3, 1e-2, 0.1] {
                    let gs = jitter_gain_stats(&params(d, lam, sigma));
                    assert!(gs.var >= 0.0, "negative Var[G] at D={d} lam={lam} s={sigma}");
                }
            }
        }
    }

    #[test]
    fn closure_self_consistency() {
        // sigma2_ln == -2 ln(mean / g0) by construction of the closure.
        for &sigma in &[1e-4, 1e-3, 5e-3, 2e-2] {
            let gs = jitter_gain_stats(&params(1.5, 0.122, sigma));
            assert_relative_eq!(
                gs.sigma2_ln,
                -2.0 * (gs.mean / gs.g0).ln(),
                max_relative = 1e-12
            );
            assert!(gs.mu_ln.exp() <= gs.g0);
            assert!(gs.mean <= gs.g0);
        }
    }

    #[test]
    fn critical_diameter_cases() {
        assert_relative_eq!(
            critical_diameter(0.122, 1e-3).unwrap(),
            45.872,
            max_relative = 1e-12
        );
        let d1 = critical_diameter(0.122, 2e-3).unwrap();
        let d2 = critical_diameter(0.122, 1e-3).unwrap();
        assert_relative_eq!(d2 / d1, 2.0, max_relative = 1e-14);
        // unit cancellation: wavelength over jitter drops out entirely
        assert_relative_eq!(
            critical_diameter(1.0, 0.376).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        assert!(critical_diameter(0.122, 0.0).is_err());
    }
}
