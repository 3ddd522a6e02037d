//! Shared numerical kernels: Gauss-Hermite quadrature, log-gamma, Gamma
//! sampling, and seeded random streams.
//!
//! Everything here is deterministic given its inputs; the samplers take an
//! explicit RNG so that analytic code paths consume no randomness.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;

use crate::error::{Error, Result};

/// Largest supported Gauss-Hermite order.
pub const MAX_GH_ORDER: usize = 128;

/// Default Gauss-Hermite order; sufficient for the logistic kill integrand.
pub const DEFAULT_GH_ORDER: usize = 10;

// ---------------------------------------------------------------------------
// Gauss-Hermite quadrature
// ---------------------------------------------------------------------------

/// A physicists' Gauss-Hermite rule: integrates `exp(-z^2) * f(z)` over the
/// real line as `sum_i w_i f(z_i)`.
///
/// Nodes are strictly increasing and exactly antisymmetric about zero;
/// weights are positive and sum to `sqrt(pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Quadrature of `exp(-z^2) * integrand(z)` over the real line.
    pub fn integrate<F: Fn(f64) -> f64>(&self, integrand: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&z, &w)| w * integrand(z))
            .sum()
    }

    /// Expectation `E[f(X)]` for `X ~ Normal(mu, sigma^2)` via the affine
    /// change of variables `x = mu + sqrt(2) * sigma * z`.
    pub fn gaussian_expectation<F: Fn(f64) -> f64>(&self, mu: f64, sigma: f64, f: F) -> f64 {
        let scale = std::f64::consts::SQRT_2 * sigma;
        self.integrate(|z| f(mu + scale * z)) / std::f64::consts::PI.sqrt()
    }
}

/// Builds the `order`-point Gauss-Hermite rule for the weight `exp(-z^2)`.
///
/// Uses the Golub-Welsch construction: the rule's nodes are the eigenvalues
/// of the symmetric tridiagonal Jacobi matrix with zero diagonal and
/// off-diagonal `sqrt(i/2)`, and the weight for node `j` is
/// `sqrt(pi) * v_j[0]^2` with `v_j` the normalized eigenvector.
///
/// Eigenvalues carry tiny asymmetries, so the sorted nodes and weights are
/// symmetrized pairwise; the invariant `z_i = -z_{n+1-i}` then holds exactly.
pub fn gauss_hermite(order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_GH_ORDER {
        return Err(Error::InvalidArgument(format!(
            "Gauss-Hermite order must be in [1, {MAX_GH_ORDER}], got {order}"
        )));
    }

    let mut jacobi = DMatrix::<f64>::zeros(order, order);
    for i in 0..order - 1 {
        let off = ((i + 1) as f64 / 2.0).sqrt();
        jacobi[(i, i + 1)] = off;
        jacobi[(i + 1, i)] = off;
    }
    let eigen = jacobi.symmetric_eigen();

    let sqrt_pi = std::f64::consts::PI.sqrt();
    let mut pairs: Vec<(f64, f64)> = eigen
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(j, &z)| {
            let first = eigen.eigenvectors[(0, j)];
            (z, sqrt_pi * first * first)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut nodes: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mut weights: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    for i in 0..order / 2 {
        let j = order - 1 - i;
        let z = 0.5 * (nodes[j] - nodes[i]);
        nodes[i] = -z;
        nodes[j] = z;
        let w = 0.5 * (weights[i] + weights[j]);
        weights[i] = w;
        weights[j] = w;
    }
    if order % 2 == 1 {
        nodes[order / 2] = 0.0;
    }

    Ok(QuadratureRule {
        order,
        nodes,
        weights,
    })
}

// ---------------------------------------------------------------------------
// Log-gamma
// ---------------------------------------------------------------------------

// Lanczos coefficients for g = 7, n = 9, kept at their published precision.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

// ln(2*pi)/2 split into a double-double pair.
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const HALF_LN_2PI_LO: f64 = -3.878_294_158_067_241_4e-17;

// Stirling series coefficients B_{2n} / (2n (2n-1)) for the asymptotic
// expansion of ln Gamma in descending powers of x.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1_260.0,
    -1.0 / 1_680.0,
    1.0 / 1_188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3_617.0 / 122_400.0,
];

/// Natural logarithm of the Gamma function for `x > 0`.
///
/// Lanczos (g = 7) below the Stirling cutoff; above it, the asymptotic
/// series evaluated with a compensated sum. Absolute error stays near a
/// few ulps of the result over `[1e-3, 1e3]`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    if x >= 13.0 {
        Ok(ln_gamma_stirling(x))
    } else {
        Ok(ln_gamma_lanczos(x))
    }
}

fn ln_gamma_lanczos(x: f64) -> f64 {
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + (i as f64 - 1.0));
    }
    let t = x + LANCZOS_G - 0.5;
    HALF_LN_2PI + (x - 0.5) * t.ln() - t + acc.ln()
}

fn ln_gamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in STIRLING_COEFFS {
        series += c * p;
        p *= inv2;
    }

    // (x - 1/2) ln x - x + ln(2*pi)/2 + series, with the dominant product
    // split by an FMA residual and the terms combined by a Neumaier sum:
    // the cancellation between (x - 1/2) ln x and x otherwise costs ~1 ulp
    // of the larger intermediate.
    let a = x - 0.5;
    let lnx = x.ln();
    let prod = a * lnx;
    let prod_lo = a.mul_add(lnx, -prod);
    neumaier_sum(&[prod, -x, HALF_LN_2PI, series, prod_lo, HALF_LN_2PI_LO])
}

fn neumaier_sum(terms: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

// ---------------------------------------------------------------------------
// Random sampling
// ---------------------------------------------------------------------------

/// Draws one Gamma(shape, rate) variate: mean `shape/rate`, variance
/// `shape/rate^2`. Deterministic for a fixed stream state.
pub fn sample_gamma<R: Rng + ?Sized>(rng: &mut R, shape: f64, rate: f64) -> Result<f64> {
    let dist = gamma_distribution(shape, rate)?;
    Ok(dist.sample(rng))
}

/// Builds the Gamma(shape, rate) sampler once, for tight sampling loops.
/// `rand_distr` parameterizes by scale, so the rate is inverted here.
pub fn gamma_distribution(shape: f64, rate: f64) -> Result<rand_distr::Gamma<f64>> {
    if !(shape > 0.0) || !(rate > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "Gamma parameters must be positive, got shape={shape}, rate={rate}"
        )));
    }
    rand_distr::Gamma::new(shape, 1.0 / rate)
        .map_err(|e| Error::InvalidArgument(format!("Gamma({shape}, rate={rate}): {e}")))
}

/// A seeded, stream-indexed RNG. Streams with distinct indices are
/// statistically independent, which lets Monte Carlo workers own disjoint
/// streams keyed by chunk index while staying bit-reproducible.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

// ===========================================================================
// Tests
// ===========================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    const SQRT_PI: f64 = 1.772_453_850_905_516;

    #[test]
    fn gh_order_one_is_point_mass_at_zero() {
        let rule = gauss_hermite(1).unwrap();
        assert_eq!(rule.nodes(), &[0.0]);
        assert_abs_diff_eq!(rule.weights()[0], SQRT_PI, epsilon = 1e-14);
    }

    #[test]
    fn gh_order_two_matches_hermite_roots() {
        let rule = gauss_hermite(2).unwrap();
        let inv_sqrt2 = 1.0 / std::f64::consts::SQRT_2;
        assert_abs_diff_eq!(rule.nodes()[0], -inv_sqrt2, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.nodes()[1], inv_sqrt2, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.weights()[0], SQRT_PI / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.weights()[1], SQRT_PI / 2.0, epsilon = 1e-14);
    }

    #[test]
    fn gh_order_three_matches_reference() {
        // Golub-Welsch reference values: nodes +-sqrt(3/2) and 0.
        let rule = gauss_hermite(3).unwrap();
        let x = 1.224_744_871_391_589;
        let w_outer = 0.295_408_975_150_919_35;
        let w_mid = 1.181_635_900_603_677_4;
        assert_abs_diff_eq!(rule.nodes()[0], -x, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.nodes()[1], 0.0, epsilon = 0.0);
        assert_abs_diff_eq!(rule.nodes()[2], x, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.weights()[0], w_outer, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.weights()[1], w_mid, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.weights()[2], w_outer, epsilon = 1e-14);
    }

    #[test]
    fn gh_order_ten_integrates_quartic_moment() {
        // integral of exp(-z^2) z^4 dz = (3/4) sqrt(pi), exact for order >= 3.
        let rule = gauss_hermite(10).unwrap();
        let est = rule.integrate(|z| z.powi(4));
        assert_relative_eq!(est, 0.75 * SQRT_PI, max_relative = 1e-12);
    }

    #[test]
    fn gh_rule_invariants_across_orders() {
        for order in [1, 2, 3, 5, 8, 10, 16, 33, 64, 128] {
            let rule = gauss_hermite(order).unwrap();
            // strictly increasing
            for i in 1..order {
                assert!(
                    rule.nodes()[i] > rule.nodes()[i - 1],
                    "order {order}: nodes not strictly increasing"
                );
            }
            // exact antisymmetry and positive weights
            for i in 0..order {
                let j = order - 1 - i;
                assert_eq!(
                    rule.nodes()[i], -rule.nodes()[j],
                    "order {order}: node antisymmetry"
                );
                assert!(rule.weights()[i] > 0.0, "order {order}: weight positivity");
            }
            // zeroth and second weighted moments; the second needs degree-2
            // exactness, which starts at order 2
            let w_sum: f64 = rule.weights().iter().sum();
            assert_relative_eq!(w_sum, SQRT_PI, max_relative = 1e-12);
            if order >= 2 {
                let second: f64 = rule.integrate(|z| z * z);
                assert_relative_eq!(second, SQRT_PI / 2.0, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn gh_gaussian_expectation_reproduces_mean_and_second_moment() {
        for order in [2, 4, 10, 32] {
            let rule = gauss_hermite(order).unwrap();
            for &(mu, sigma) in &[(0.0, 1.0), (-6.5, 0.35), (3.0, 2.5), (100.0, 0.01)] {
                let m1 = rule.gaussian_expectation(mu, sigma, |x| x);
                let m2 = rule.gaussian_expectation(mu, sigma, |x| x * x);
                assert_relative_eq!(m1, mu, max_relative = 1e-10, epsilon = 1e-10);
                assert_relative_eq!(m2, mu * mu + sigma * sigma, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn gh_order_out_of_range_is_rejected() {
        assert!(gauss_hermite(0).is_err());
        assert!(gauss_hermite(129).is_err());
        assert!(gauss_hermite(128).is_ok());
    }

    // Reference values computed with mpmath at 50 digits. ln Gamma(3)
    // happens to be ln 2; these are frozen oracle values, not derivations.
    #[allow(clippy::approx_constant, clippy::excessive_precision)]
    const LN_GAMMA_REFS: &[(f64, f64)] = &[
        (0.001, 6.907178885383853),
        (0.003, 5.807418734725978),
        (0.01, 4.599479878042022),
        (0.03, 3.489971043442412),
        (0.1, 2.252712651734206),
        (0.25, 1.2880225246980774),
        (0.5, 0.5723649429247001),
        (0.75, 0.20328095143129538),
        (1.0, 0.0),
        (1.5, -0.12078223763524522),
        (2.0, 0.0),
        (3.0, 0.6931471805599453),
        (5.0, 3.1780538303479458),
        (7.3, 7.147892523022248),
        (10.0, 12.801827480081469),
        (13.0, 19.987214495661885),
        (20.0, 39.339884187199495),
        (50.0, 144.5657439463449),
        (100.0, 359.1342053695754),
        (250.0, 1128.5237708729908),
        (500.0, 2605.115850361734),
        (750.0, 4212.663917938811),
        (841.3, 4822.363580465583),
        (1000.0, 5905.220423209181),
    ];

    #[test]
    fn log_gamma_matches_high_precision_references() {
        for &(x, want) in LN_GAMMA_REFS {
            let got = log_gamma(x).unwrap();
            assert!(
                (got - want).abs() < 1e-12,
                "log_gamma({x}): got {got}, want {want}, err {:.2e}",
                (got - want).abs()
            );
        }
    }

    #[test]
    fn log_gamma_special_points() {
        assert_abs_diff_eq!(log_gamma(1.0).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(log_gamma(2.0).unwrap(), 0.0, epsilon = 1e-14);
        let ln_sqrt_pi = 0.5 * std::f64::consts::PI.ln();
        assert_abs_diff_eq!(log_gamma(0.5).unwrap(), ln_sqrt_pi, epsilon = 1e-14);
        assert_abs_diff_eq!(
            log_gamma(7.3).unwrap(),
            7.147892523022248,
            epsilon = 1e-13
        );
    }

    #[test]
    fn log_gamma_recurrence_property() {
        // ln Gamma(x+1) = ln Gamma(x) + ln x, across both evaluation branches.
        let mut x = 1.7e-3;
        while x < 900.0 {
            let lhs = log_gamma(x + 1.0).unwrap();
            let rhs = log_gamma(x).unwrap() + x.ln();
            assert!(
                (lhs - rhs).abs() < 1e-11 * (1.0 + lhs.abs()),
                "recurrence failed at x={x}: {lhs} vs {rhs}"
            );
            x *= 1.37;
        }
    }

    #[test]
    fn log_gamma_rejects_nonpositive() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn gamma_sampler_exponential_special_case() {
        let mut rng = stream_rng(0xC0FFEE, 0);
        let n = 1_000_000;
        let dist = gamma_distribution(1.0, 1.0).unwrap();
        let mean: f64 = (0..n).map(|_| dist.sample(&mut rng)).sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() < 0.01, "Exp(1) mean off: {mean}");
    }

    #[test]
    fn gamma_sampler_two_moment_check() {
        // Gamma(2, rate 4): mean 0.5, variance 0.125. Gate at 3 estimator SE:
        // SE(mean) = sd/sqrt(n); SE(s^2) ~ sigma^2 sqrt((kappa-1)/n) with the
        // Gamma kurtosis kappa = 3 + 6/shape = 6.
        let mut rng = stream_rng(42, 7);
        let n = 1_000_000usize;
        let dist = gamma_distribution(2.0, 4.0).unwrap();
        let draws: Vec<f64> = (0..n).map(|_| dist.sample(&mut rng)).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / (n as f64 - 1.0);

        let se_mean = (0.125f64 / n as f64).sqrt();
        let se_var = 0.125 * (5.0 / n as f64).sqrt();
        assert!(
            (mean - 0.5).abs() < 3.0 * se_mean,
            "mean {mean} vs 0.5 (3SE {:.1e})",
            3.0 * se_mean
        );
        assert!(
            (var - 0.125).abs() < 3.0 * se_var,
            "var {var} vs 0.125 (3SE {:.1e})",
            3.0 * se_var
        );
    }

    #[test]
    fn gamma_sampler_is_deterministic_per_stream() {
        let mut a = stream_rng(9, 3);
        let mut b = stream_rng(9, 3);
        for _ in 0..100 {
            let xa = sample_gamma(&mut a, 2.5, 0.7).unwrap();
            let xb = sample_gamma(&mut b, 2.5, 0.7).unwrap();
            assert_eq!(xa.to_bits(), xb.to_bits());
        }
        // distinct stream diverges
        let mut c = stream_rng(9, 4);
        let xc = sample_gamma(&mut c, 2.5, 0.7).unwrap();
        let mut a2 = stream_rng(9, 3);
        assert_ne!(xc.to_bits(), sample_gamma(&mut a2, 2.5, 0.7).unwrap().to_bits());
    }

    #[test]
    fn gamma_sampler_rejects_nonpositive_parameters() {
        let mut rng = stream_rng(1, 0);
        assert!(sample_gamma(&mut rng, 0.0, 1.0).is_err());
        assert!(sample_gamma(&mut rng, 1.0, 0.0).is_err());
        assert!(sample_gamma(&mut rng, -2.0, 3.0).is_err());
    }
}
