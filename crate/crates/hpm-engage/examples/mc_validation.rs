//! Analytic closures versus the Monte Carlo oracle at a stochastic
//! operating point: surrogate mode isolates the quadrature, physical mode
//! measures the closure error itself.

use hpm_engage::montecarlo::{simulate, MCConfig, SamplingMode};
use hpm_engage::scenario::Scenario;

fn main() {
    let mut scenario = Scenario::baseline();
    scenario.kinematics.sigma_a = 100.0; // maneuvering target
    scenario.eval_time_s = 1.0;

    let summary = scenario.evaluate().expect("evaluate");
    println!(
        "analytic : mu_lnE {:.5}, sigma2_lnE {:.4e}, p_kill {:.6}",
        summary.log_energy.mu_ln_e, summary.log_energy.sigma2_ln_e, summary.p_kill
    );

    for mode in [SamplingMode::Surrogate, SamplingMode::Physical] {
        let report = simulate(&scenario, &MCConfig::new(1_000_000, 42, mode)).expect("simulate");
        println!(
            "{mode:?}: mu_lnE {:.5}, sigma2_lnE {:.4e}, p_kill {:.6} (SE {:.1e})",
            report.mu_ln_e, report.sigma2_ln_e, report.p_kill_hat, report.p_kill_se
        );
        let gap = (report.p_kill_hat - summary.p_kill).abs();
        match mode {
            SamplingMode::Surrogate => {
                println!("  quadrature-vs-sampling gap {gap:.2e} ({:.1} SE)", gap / report.p_kill_se)
            }
            SamplingMode::Physical => {
                println!("  total closure error in p_kill: {gap:.2e}")
            }
        }
    }
}
