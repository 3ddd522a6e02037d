//! Energy-to-neutralization mapping: logistic per-pulse kill curve, its
//! Gauss-Hermite average over the log-normal energy distribution, and the
//! cumulative dwell probability under pulse independence.

use serde::Serialize;

use crate::link::LogEnergyParams;
use crate::numerics::QuadratureRule;

/// Logistic susceptibility model: `P(E) = 1 / (1 + exp(-slope (E - E_th)))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KillModel {
    /// Threshold energy at which the kill probability is exactly 1/2 \[J\].
    pub e_threshold_j: f64,
    /// Logistic slope \[1/J\].
    pub slope_per_j: f64,
}

impl KillModel {
    pub fn validate(&self, failures: &mut Vec<String>) {
        if !(self.e_threshold_j > 0.0) {
            failures.push(format!(
                "kill threshold must be positive, got {}",
                self.e_threshold_j
            ));
        }
        if !(self.slope_per_j > 0.0) {
            failures.push(format!("kill slope must be positive, got {}", self.slope_per_j));
        }
    }
}

/// Logistic with the argument clamped to +-700 so `exp` cannot overflow;
/// beyond that the probability is saturated anyway.
fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x.clamp(-700.0, 700.0)).exp())
}

/// Per-pulse kill probability for a known received energy.
pub fn kill_probability(energy_j: f64, km: &KillModel) -> f64 {
    logistic(km.slope_per_j * (energy_j - km.e_threshold_j))
}

/// Mean per-pulse kill probability: the logistic averaged over
/// `ln E ~ Normal(mu_lnE, sigma2_lnE)` by Gauss-Hermite quadrature,
///
/// ```text
/// P_bar = 1/sqrt(pi) sum_i w_i logistic(slope (exp(mu + sqrt(2) sigma z_i) - E_th))
/// ```
///
/// For `sigma2_lnE = 0` this returns `kill_probability(exp(mu_lnE))` exactly.
pub fn mean_kill_probability(le: &LogEnergyParams, km: &KillModel, rule: &QuadratureRule) -> f64 {
    if le.sigma2_ln_e == 0.0 {
        return kill_probability(le.mu_ln_e.exp(), km);
    }
    let sigma = le.sigma2_ln_e.sqrt();
    rule.gaussian_expectation(le.mu_ln_e, sigma, |x| kill_probability(x.exp(), km))
}

/// Cumulative neutralization probability over a dwell of `dwell_s` seconds
/// at `prf_hz`, assuming pulse independence:
///
/// ```text
/// P_tot = 1 - (1 - p_bar)^(prf * dwell)
/// ```
///
/// Evaluated as `-expm1(N ln1p(-p))` so tiny per-pulse probabilities survive
/// thousands of pulses without underflow.
pub fn cumulative_kill_probability(p_bar: f64, prf_hz: f64, dwell_s: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p_bar), "p_bar out of [0,1]: {p_bar}");
    debug_assert!(dwell_s >= 0.0, "negative dwell: {dwell_s}");
    let n = crate::link::pulse_count(prf_hz, dwell_s);
    if n == 0.0 || p_bar == 0.0 {
        return 0.0;
    }
    if p_bar >= 1.0 {
        return 1.0;
    }
    -(n * (-p_bar).ln_1p()).exp_m1()
}

// ===========================================================================
// Tests
// ===========================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gauss_hermite;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    const FIG4_MODEL: LogEnergyParams = LogEnergyParams {
        mu_ln_e: -6.5,
        sigma2_ln_e: 0.35 * 0.35,
    };

    fn km(eth: f64, slope: f64) -> KillModel {
        KillModel {
            e_threshold_j: eth,
            slope_per_j: slope,
        }
    }

    #[test]
    fn logistic_midpoint_is_exactly_half() {
        assert_eq!(kill_probability(1e-2, &km(1e-2, 50.0)), 0.5);
        assert_eq!(kill_probability(3.7, &km(3.7, 0.01)), 0.5);
    }

    #[test]
    fn logistic_reference_point() {
        // slope 50, 0.1 J above threshold: 1/(1 + e^-5)
        let p = kill_probability(0.11, &km(0.01, 50.0));
        assert_relative_eq!(p, 1.0 / (1.0 + (-5.0f64).exp()), max_relative = 1e-14);
        assert_abs_diff_eq!(p, 0.993_307, epsilon = 1e-6);
    }

    #[test]
    fn logistic_tail_approximation_at_zero_energy() {
        // For slope * E_th >> 1, P(0) ~ exp(-slope * E_th).
        let model = km(0.4, 50.0); // slope*E_th = 20
        let p = kill_probability(0.0, &model);
        assert_relative_eq!(p, (-20.0f64).exp(), max_relative = 1e-8);
    }

    #[test]
    fn logistic_is_strictly_increasing_and_bounded() {
        let model = km(1e-2, 50.0);
        let mut last = 0.0;
        for i in 0..200 {
            let e = i as f64 * 1e-3;
            let p = kill_probability(e, &model);
            assert!(p > last && p < 1.0);
            last = p;
        }
        // extreme arguments stay inside (0, 1)
        assert!(kill_probability(1e30, &model) < 1.0 || kill_probability(1e30, &model) == 1.0);
        assert!(kill_probability(0.0, &km(100.0, 50.0)) > 0.0);
    }

    #[test]
    fn degenerate_spread_collapses_to_logistic_midpoint() {
        // pick the threshold as exp(mu) so the midpoint is hit bit-exactly
        let mu = (1e-2f64).ln();
        let le = LogEnergyParams {
            mu_ln_e: mu,
            sigma2_ln_e: 0.0,
        };
        let rule = gauss_hermite(10).unwrap();
        assert_eq!(mean_kill_probability(&le, &km(mu.exp(), 50.0), &rule), 0.5);
    }

    #[test]
    fn reference_kill_probability_triple() {
        // mu_lnE = -6.5, sigma_lnE = 0.35, slope 50: the three-threshold
        // reference values, reproduced by 10-point quadrature.
        let rule = gauss_hermite(10).unwrap();
        let cases = [
            (1e-3, 0.507_477_365_958_942_3),
            (1e-2, 0.396_517_778_104_762_46),
            (1e-1, 0.007_248_647_841_301_565),
        ];
        for (eth, expect) in cases {
            let p = mean_kill_probability(&FIG4_MODEL, &km(eth, 50.0), &rule);
            assert_abs_diff_eq!(p, expect, epsilon = 1e-9);
        }
    }

    #[test]
    fn quadrature_matches_lognormal_sampling() {
        use rand_distr::Distribution;
        let rule = gauss_hermite(10).unwrap();
        let model = km(1e-2, 50.0);
        let gh = mean_kill_probability(&FIG4_MODEL, &model, &rule);

        let normal = rand_distr::Normal::new(-6.5, 0.35).unwrap();
        let mut rng = crate::numerics::stream_rng(2024, 0);
        let n = 1_000_000;
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        for _ in 0..n {
            let ln_e: f64 = normal.sample(&mut rng);
            let p = kill_probability(ln_e.exp(), &model);
            sum += p;
            sum2 += p * p;
        }
        let mc = sum / n as f64;
        let se = ((sum2 / n as f64 - mc * mc) / n as f64).sqrt();
        assert!((gh - mc).abs() < 3.0 * se, "GH {gh} vs MC {mc} (3SE {:.1e})", 3.0 * se);
    }

    #[test]
    fn mean_kill_monotone_in_threshold_and_location() {
        let rule = gauss_hermite(10).unwrap();
        let mut last = 1.0;
        for i in 0..60 {
            let eth = 1e-3 * 10f64.powf(i as f64 / 29.5);
            let p = mean_kill_probability(&FIG4_MODEL, &km(eth, 50.0), &rule);
            assert!(p < last, "not decreasing in E_th at {eth}");
            last = p;
        }
        let mut last = 0.0;
        for i in 0..60 {
            let le = LogEnergyParams {
                mu_ln_e: -9.0 + i as f64 * 0.1,
                sigma2_ln_e: 0.1225,
            };
            let p = mean_kill_probability(&le, &km(1e-2, 50.0), &rule);
            assert!(p > last, "not increasing in mu_lnE at {}", le.mu_ln_e);
            last = p;
        }
    }

    #[test]
    fn quadrature_order_convergence() {
        let rule10 = gauss_hermite(10).unwrap();
        let rule40 = gauss_hermite(40).unwrap();
        // across a grid spanning the regimes of interest
        for &mu in &[-16.1, -7.0, -6.5, -6.0, -4.0] {
            for &sigma in &[0.1, 0.35, 0.7] {
                for &eth in &[1e-3, 1e-2, 1e-1] {
                    let le = LogEnergyParams {
                        mu_ln_e: mu,
                        sigma2_ln_e: sigma * sigma,
                    };
                    let model = km(eth, 50.0);
                    let p10 = mean_kill_probability(&le, &model, &rule10);
                    let p40 = mean_kill_probability(&le, &model, &rule40);
                    assert!(
                        (p10 - p40).abs() < 1e-2,
                        "divergence at mu={mu} sigma={sigma} eth={eth}"
                    );
                }
            }
        }
        // on the reference three-threshold set the rule is near-exact
        for &eth in &[1e-3, 1e-2, 1e-1] {
            let model = km(eth, 50.0);
            let p10 = mean_kill_probability(&FIG4_MODEL, &model, &rule10);
            let p40 = mean_kill_probability(&FIG4_MODEL, &model, &rule40);
            assert!((p10 - p40).abs() < 1e-4);
        }
    }

    #[test]
    fn cumulative_kill_cases() {
        assert_eq!(cumulative_kill_probability(0.4, 1000.0, 0.0), 0.0);
        assert_eq!(cumulative_kill_probability(1.0, 1000.0, 0.001), 1.0);
        // N = 10 pulses at p = 0.4: 1 - 0.6^10
        let p = cumulative_kill_probability(0.4, 1000.0, 0.01);
        assert_abs_diff_eq!(p, 1.0 - 0.6f64.powi(10), epsilon = 1e-15);
        assert_abs_diff_eq!(p, 0.993_953_382_4, epsilon = 1e-10);
    }

    #[test]
    fn cumulative_kill_small_probability_stability() {
        // 1e6 pulses at p = 1e-12 must not vanish to zero
        let p = cumulative_kill_probability(1e-12, 1e6, 1.0);
        assert_relative_eq!(p, 9.999_995e-7, max_relative = 1e-5);
        // enormous N saturates cleanly
        assert_eq!(cumulative_kill_probability(0.4, 1000.0, 1000.0), 1.0);
    }

    #[test]
    fn cumulative_kill_nondecreasing_in_dwell() {
        let mut last = -1.0;
        for i in 0..100 {
            let t = i as f64 * 0.01;
            let p = cumulative_kill_probability(0.01, 1000.0, t);
            assert!(p >= last);
            last = p;
        }
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        /// Splitting a dwell is the same engagement twice:
        /// `1 - (1-p)^(N1+N2) == 1 - (1-cum1)(1-cum2)`.
        #[test]
        fn cumulative_kill_semigroup(
            p in 0.0f64..1.0,
            t1 in 0.0f64..5.0,
            t2 in 0.0f64..5.0,
            prf in 1.0f64..10_000.0,
        ) {
            let whole = cumulative_kill_probability(p, prf, t1 + t2);
            let c1 = cumulative_kill_probability(p, prf, t1);
            let c2 = cumulative_kill_probability(p, prf, t2);
            let split = 1.0 - (1.0 - c1) * (1.0 - c2);
            prop_assert!((whole - split).abs() < 1e-12, "whole={whole} split={split}");
        }

        /// The quadrature average always lands in the open unit interval and
        /// collapses correctly as sigma -> 0.
        #[test]
        fn mean_kill_is_a_probability(
            mu in -20.0f64..2.0,
            sigma in 0.0f64..2.0,
            eth_log in -3.0f64..0.0,
        ) {
            let rule = crate::numerics::gauss_hermite(10).unwrap();
            let le = LogEnergyParams { mu_ln_e: mu, sigma2_ln_e: sigma * sigma };
            let model = KillModel { e_threshold_j: 10f64.powf(eth_log), slope_per_j: 50.0 };
            let p = mean_kill_probability(&le, &model, &rule);
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }
}
