//! Ground-truth sampling oracle for the analytic closures.
//!
//! `physical` mode samples the underlying random variables (position, jitter
//! angle, rain rate) and pushes them through the instantaneous link budget;
//! `surrogate` mode samples the fitted log-normal energy law directly.
//! Comparing the two quantifies the total closure error; comparing the
//! surrogate against the quadrature checks the integrator alone.
//!
//! Reproducibility: samples are processed in fixed chunks, each chunk owns
//! the ChaCha stream keyed by its index, and chunk results are merged in
//! index order. Reports are bit-identical for a fixed (seed, n, mode)
//! regardless of the worker count.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::antenna::jitter_gain_stats;
use crate::atmosphere::attenuation_stats;
use crate::error::{Error, Result};
use crate::kill::{cumulative_kill_probability, kill_probability};
use crate::link::{log_energy_params, LogEnergyParams};
use crate::numerics::{gamma_distribution, stream_rng};
use crate::scenario::Scenario;

/// Samples per worker chunk; fixes the stream layout independently of the
/// thread count.
const CHUNK: u64 = 1 << 16;

/// Number of log-energy histogram bins.
const HIST_BINS: usize = 64;

/// What the oracle samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SamplingMode {
    /// Position, jitter angle, and rain rate drawn from their physical laws.
    Physical,
    /// Log-energy drawn from the analytic log-normal closure.
    Surrogate,
}

impl std::str::FromStr for SamplingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "physical" => Ok(SamplingMode::Physical),
            "surrogate" => Ok(SamplingMode::Surrogate),
            other => Err(Error::InvalidArgument(format!(
                "unknown sampling mode `{other}`; expected `physical` or `surrogate`"
            ))),
        }
    }
}

/// Monte Carlo run configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MCConfig {
    pub n_samples: u64,
    pub seed: u64,
    pub mode: SamplingMode,
    /// Worker threads; affects speed only, never results.
    pub workers: usize,
    /// Stress-analysis extension: draw the rain rate once per engagement
    /// instead of per pulse. The default (per pulse) matches the
    /// pulse-independence assumption behind the cumulative-kill formula.
    pub freeze_rain: bool,
}

impl MCConfig {
    pub fn new(n_samples: u64, seed: u64, mode: SamplingMode) -> Self {
        Self {
            n_samples,
            seed,
            mode,
            workers: num_threads_default(),
            freeze_rain: false,
        }
    }

    pub fn with_frozen_rain(mut self) -> Self {
        self.freeze_rain = true;
        self
    }
}

fn num_threads_default() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Fixed-range log-energy histogram. Bin edges derive from the analytic
/// closure so they are known before sampling; outliers land in the edge
/// bins.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    fn bin(&self, x: f64) -> usize {
        let frac = (x - self.lo) / (self.hi - self.lo);
        ((frac * HIST_BINS as f64).floor() as i64).clamp(0, HIST_BINS as i64 - 1) as usize
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Empirical statistics from one Monte Carlo run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MCReport {
    pub mode: SamplingMode,
    pub n_samples: u64,
    pub seed: u64,
    /// Empirical mean per-pulse energy \[J\].
    pub mean_energy_j: f64,
    /// Empirical energy variance \[J^2\].
    pub var_energy_j2: f64,
    /// Empirical mean of ln E.
    pub mu_ln_e: f64,
    /// Empirical variance of ln E (n-1 divisor).
    pub sigma2_ln_e: f64,
    /// Mean of the per-sample kill probabilities.
    pub p_kill_hat: f64,
    /// Standard error of `p_kill_hat` as a mean of logistic values.
    pub p_kill_se: f64,
    /// Standard error under a Bernoulli reading of the same estimate.
    pub p_kill_se_bernoulli: f64,
    /// Cumulative kill probability at the scenario dwell, from `p_kill_hat`.
    pub p_tot_hat: f64,
    pub histogram: Histogram,
}

impl MCReport {
    /// Cumulative kill probability implied by `p_kill_hat` at other dwells.
    pub fn p_tot_at(&self, prf_hz: f64, dwell_s: f64) -> f64 {
        cumulative_kill_probability(self.p_kill_hat, prf_hz, dwell_s)
    }

    /// Standard error of `p_tot_hat` by the delta method.
    pub fn p_tot_se(&self, prf_hz: f64, dwell_s: f64) -> f64 {
        let n = prf_hz * dwell_s;
        if n == 0.0 || self.p_kill_hat >= 1.0 {
            return 0.0;
        }
        n * (1.0 - self.p_kill_hat).powf(n - 1.0) * self.p_kill_se
    }
}

// ---------------------------------------------------------------------------
// Streaming accumulation
// ---------------------------------------------------------------------------

/// Welford accumulator; merged pairwise with Chan's formula so parallel
/// reduction in fixed order stays exact and stable.
#[derive(Debug, Clone, Copy)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn new() -> Self {
        Moments {
            n: 0,
            mean: 0.0,
            m2: 0.0,
        }
    }

    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(&mut self, other: &Moments) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let na = self.n as f64;
        let nb = other.n as f64;
        let n = na + nb;
        let delta = other.mean - self.mean;
        self.mean += delta * nb / n;
        self.m2 += other.m2 + delta * delta * na * nb / n;
        self.n += other.n;
    }

    fn variance_population(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.m2 / self.n as f64
        }
    }

    fn variance_sample(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }
}

struct ChunkStats {
    energy: Moments,
    ln_energy: Moments,
    p_kill: Moments,
    hist: Vec<u64>,
}

impl ChunkStats {
    fn new() -> Self {
        ChunkStats {
            energy: Moments::new(),
            ln_energy: Moments::new(),
            p_kill: Moments::new(),
            hist: vec![0u64; HIST_BINS],
        }
    }
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

struct PhysicalModel {
    mean_r: [f64; 3],
    sigma_r: f64,
    g0: f64,
    k_sharp: f64,
    jitter_sigma: f64,
    gamma_gas: f64,
    rain: Option<(rand_distr::Gamma<f64>, f64, f64)>, // (rate dist, k(f), alpha(f))
    cos_phi: f64,
    energy_const: f64, // P_t tau_p (lambda / 4 pi)^2
}

impl PhysicalModel {
    fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        let mut range2 = 0.0;
        for mean in self.mean_r {
            let x: f64 = if self.sigma_r > 0.0 {
                let z: f64 = StandardNormal.sample(rng);
                mean + self.sigma_r * z
            } else {
                mean
            };
            range2 += x * x;
        }

        let gain = if self.jitter_sigma > 0.0 {
            let z: f64 = StandardNormal.sample(rng);
            let theta = self.jitter_sigma * z;
            self.g0 * (-self.k_sharp * theta * theta).exp()
        } else {
            self.g0
        };

        let mut gamma = self.gamma_gas;
        if let Some((dist, k_f, alpha_f)) = &self.rain {
            let rain_rate = dist.sample(rng);
            gamma += k_f * rain_rate.powf(*alpha_f) * self.cos_phi;
        }
        let atten_db = gamma * range2.sqrt() / 1000.0;

        self.energy_const * gain / range2 * (-core::f64::consts::LN_10 / 10.0 * atten_db).exp()
    }
}

/// Runs the Monte Carlo oracle for a scenario.
///
/// Per physical-mode sample: position `~ Normal(mean_r, sigma_r^2 I3)` gives
/// the range, jitter angle `~ Normal(0, sigma_theta^2)` the gain, and a
/// Gamma rain rate the specific attenuation (rain redrawn every pulse, per
/// the pulse-independence assumption); the energy follows from the
/// instantaneous Friis relation. Surrogate mode draws
/// `ln E ~ Normal(mu_lnE, sigma2_lnE)` from the closure instead.
pub fn simulate(scenario: &Scenario, cfg: &MCConfig) -> Result<MCReport> {
    if cfg.n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be >= 1".into()));
    }
    if cfg.workers == 0 {
        return Err(Error::InvalidArgument("workers must be >= 1".into()));
    }
    scenario.validate()?;

    // analytic pieces: histogram bounds, physical-model constants
    let range = scenario.range_stats()?;
    let gain = jitter_gain_stats(&scenario.antenna);
    let z_mean = scenario.z_mean()?;
    let atten = attenuation_stats(&scenario.atmosphere, &range, z_mean)?;
    let le = log_energy_params(&scenario.tx, &gain, &range, &atten);

    let sigma_ln = le.sigma2_ln_e.sqrt();
    let (hist_lo, hist_hi) = if sigma_ln > 0.0 {
        (le.mu_ln_e - 6.0 * sigma_ln, le.mu_ln_e + 6.0 * sigma_ln)
    } else {
        (le.mu_ln_e - 1.0, le.mu_ln_e + 1.0)
    };

    let kin = scenario.effective_kinematics();
    let pm = crate::kinematics::position_covariance(&kin, scenario.eval_time_s)?;
    let spread = scenario.tx.wavelength_m / (4.0 * std::f64::consts::PI);
    let cos_phi = atten.elevation_rad.cos();
    let mut gamma_gas = scenario.atmosphere.gamma_gas_db_per_km;
    let rain = match &scenario.atmosphere.rain {
        Some(r) if cfg.freeze_rain => {
            // one engagement-wide draw, from a stream no chunk can use
            let mut rng = stream_rng(cfg.seed, u64::MAX);
            let rate = gamma_distribution(r.shape, r.rate)?.sample(&mut rng);
            gamma_gas += r.k_coeff * rate.powf(r.alpha) * cos_phi;
            None
        }
        Some(r) => Some((gamma_distribution(r.shape, r.rate)?, r.k_coeff, r.alpha)),
        None => None,
    };
    let physical = PhysicalModel {
        mean_r: pm.mean_r,
        sigma_r: pm.cov_scale.sqrt(),
        g0: gain.g0,
        k_sharp: gain.k_sharp,
        jitter_sigma: scenario.antenna.jitter_sigma_rad,
        gamma_gas,
        rain,
        cos_phi,
        energy_const: scenario.tx.peak_power_w * scenario.tx.pulse_width_s * spread * spread,
    };

    let kill = scenario.kill;
    let template = Histogram {
        lo: hist_lo,
        hi: hist_hi,
        counts: Vec::new(),
    };

    let n_chunks = cfg.n_samples.div_ceil(CHUNK);
    let run_chunk = |chunk_idx: u64| -> ChunkStats {
        let mut rng = stream_rng(cfg.seed, chunk_idx);
        let mut stats = ChunkStats::new();
        let start = chunk_idx * CHUNK;
        let count = CHUNK.min(cfg.n_samples - start);
        for _ in 0..count {
            let energy = match cfg.mode {
                SamplingMode::Physical => physical.sample(&mut rng),
                SamplingMode::Surrogate => {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    (le.mu_ln_e + sigma_ln * z).exp()
                }
            };
            let ln_e = energy.ln();
            stats.energy.push(energy);
            stats.ln_energy.push(ln_e);
            stats.p_kill.push(kill_probability(energy, &kill));
            stats.hist[template.bin(ln_e)] += 1;
        }
        stats
    };

    // map chunks in parallel, merge sequentially in index order
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let chunk_stats: Vec<ChunkStats> =
        pool.install(|| (0..n_chunks).into_par_iter().map(run_chunk).collect());

    let mut total = ChunkStats::new();
    for cs in &chunk_stats {
        total.energy.merge(&cs.energy);
        total.ln_energy.merge(&cs.ln_energy);
        total.p_kill.merge(&cs.p_kill);
        for (acc, c) in total.hist.iter_mut().zip(&cs.hist) {
            *acc += c;
        }
    }

    let n = cfg.n_samples as f64;
    let p_hat = total.p_kill.mean;
    let p_kill_se = (total.p_kill.variance_population() / n).sqrt();
    let p_kill_se_bernoulli = (p_hat.clamp(0.0, 1.0) * (1.0 - p_hat.clamp(0.0, 1.0)) / n).sqrt();

    Ok(MCReport {
        mode: cfg.mode,
        n_samples: cfg.n_samples,
        seed: cfg.seed,
        mean_energy_j: total.energy.mean,
        var_energy_j2: total.energy.variance_sample(),
        mu_ln_e: total.ln_energy.mean,
        sigma2_ln_e: total.ln_energy.variance_sample(),
        p_kill_hat: p_hat,
        p_kill_se,
        p_kill_se_bernoulli,
        p_tot_hat: cumulative_kill_probability(
            p_hat.clamp(0.0, 1.0),
            scenario.tx.prf_hz,
            scenario.dwell_s,
        ),
        histogram: Histogram {
            lo: hist_lo,
            hi: hist_hi,
            counts: total.hist,
        },
    })
}

/// Sample mean and variance (n-1 divisor) of the log of positive samples.
pub fn estimate_lognormal(samples: &[f64]) -> Result<LogEnergyParams> {
    if samples.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "log-normal estimation needs at least 2 samples, got {}",
            samples.len()
        )));
    }
    let mut moments = Moments::new();
    for &s in samples {
        if !(s > 0.0) {
            return Err(Error::Domain(format!(
                "log-normal estimation requires positive samples, got {s}"
            )));
        }
        moments.push(s.ln());
    }
    Ok(LogEnergyParams {
        mu_ln_e: moments.mean,
        sigma2_ln_e: moments.variance_sample(),
    })
}

/// Trial-level cross-check of the cumulative-kill closed form: each trial
/// draws `pulses` Bernoulli(p) outcomes and succeeds if any pulse kills.
/// Returns the success fraction and its standard error.
pub fn simulate_dwell_bernoulli(
    p_bar: f64,
    pulses: u32,
    trials: u64,
    seed: u64,
) -> (f64, f64) {
    let mut rng = stream_rng(seed, 0);
    let mut successes = 0u64;
    for _ in 0..trials {
        for _ in 0..pulses {
            if rng.random::<f64>() < p_bar {
                successes += 1;
                break;
            }
        }
    }
    let p = successes as f64 / trials as f64;
    (p, (p * (1.0 - p) / trials as f64).sqrt())
}

// ===========================================================================
// Tests
// ===========================================================================
