//! Closed-form statistics of pulsed high-power-microwave engagements
//! against stochastic aerial targets, validated by a built-in Monte Carlo
//! oracle.
//!
//! The analytic pipeline chains five stages:
//!
//! 1. [`kinematics`] - position moments under white acceleration noise,
//!    delta-method slant-range moments, log-normal range closure;
//! 2. [`antenna`] - aperture gain, Gaussian beam pattern, jitter-averaged
//!    gain statistics, critical diameter;
//! 3. [`atmosphere`] - free-space spreading, gaseous and Gamma-rain
//!    attenuation moments along the slant path;
//! 4. [`link`] - per-pulse received energy, log-energy moments, exact mean
//!    received energy;
//! 5. [`kill`] - logistic susceptibility, Gauss-Hermite mean kill
//!    probability, cumulative dwell probability.
//!
//! [`scenario::Scenario`] binds the parameter groups and runs the chain;
//! [`montecarlo`] re-derives every closure from raw samples;
//! [`sensitivity`] produces closed-form elasticities cross-checked by
//! finite differences.
//!
//! # Quick start
//!
//! ```
//! use hpm_engage::scenario::Scenario;
//!
//! let summary = Scenario::baseline().evaluate().unwrap();
//! assert!(summary.p_kill > 0.0 && summary.p_kill < 1.0);
//! ```
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --example baseline_eval            # full pipeline, one scenario
//! cargo run --example threshold_sweep          # p_kill vs kill threshold
//! cargo run --example dwell_curves             # cumulative kill vs dwell time
//! cargo run --example power_scaling            # energy distribution vs transmit power
//! cargo run --example aperture_tradeoff        # aperture size vs jitter limit
//! cargo run --example range_falloff            # inverse-square range behavior
//! cargo run --example rain_attenuation         # Gamma-rain attenuation moments
//! cargo run --example sensitivity_report       # elasticity table
//! cargo run --example quadrature_convergence   # Gauss-Hermite order study
//! cargo run --example mc_validation            # analytic vs Monte Carlo
//! ```
//!
//! The same functionality is scriptable through the `hpm-engage` binary
//! (`eval | sweep | dwell | sensitivity | validate`); see the README.

// Validation guards are written as `!(x > 0.0)` on purpose: the negation
// rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod antenna;
pub mod atmosphere;
pub mod cli;
pub mod config;
pub mod error;
pub mod kill;
pub mod kinematics;
pub mod link;
pub mod montecarlo;
pub mod numerics;
pub mod scenario;
pub mod sensitivity;
pub mod sweep;

pub use error::{Error, Result};
pub use scenario::{EngagementSummary, Scenario};
