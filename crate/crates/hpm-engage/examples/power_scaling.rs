//! Effect of transmit power on the received-energy distribution and the
//! mean kill probability. Doubling power shifts the log-energy location by
//! ln 2 while preserving the log-normal shape; the three-threshold kill
//! probabilities rise accordingly.

use hpm_engage::kill::{mean_kill_probability, KillModel};
use hpm_engage::link::LogEnergyParams;
use hpm_engage::numerics::gauss_hermite;

fn main() {
    // log-energy closure of the illustrative engagement: mu = -6.5, sigma = 0.35
    let base = LogEnergyParams {
        mu_ln_e: -6.5,
        sigma2_ln_e: 0.35 * 0.35,
    };
    let rule = gauss_hermite(10).expect("rule");
    let thresholds = [1e-3, 1e-2, 1e-1];

    println!(
        "{:<8} {:>10} {:>12} {:>12} {:>12}",
        "power", "mu_lnE", "p(1e-3 J)", "p(1e-2 J)", "p(1e-1 J)"
    );
    for mult in [1.0f64, 2.0, 4.0, 8.0] {
        let le = LogEnergyParams {
            mu_ln_e: base.mu_ln_e + mult.ln(),
            sigma2_ln_e: base.sigma2_ln_e,
        };
        let p: Vec<String> = thresholds
            .iter()
            .map(|&eth| {
                let km = KillModel {
                    e_threshold_j: eth,
                    slope_per_j: 50.0,
                };
                format!("{:>12.4}", mean_kill_probability(&le, &km, &rule))
            })
            .collect();
        println!("{:<8} {:>10.4} {}", format!("{mult}x"), le.mu_ln_e, p.join(" "));
    }
}
