//! Gauss-Hermite order study on the logistic kill integrand: the default
//! 10-point rule already agrees with a 40-point rule to well below 1e-2.

use hpm_engage::kill::{mean_kill_probability, KillModel};
use hpm_engage::link::LogEnergyParams;
use hpm_engage::numerics::gauss_hermite;

fn main() {
    let le = LogEnergyParams {
        mu_ln_e: -6.5,
        sigma2_ln_e: 0.35 * 0.35,
    };
    let km = KillModel {
        e_threshold_j: 1e-2,
        slope_per_j: 50.0,
    };
    let reference = mean_kill_probability(&le, &km, &gauss_hermite(128).expect("rule"));

    println!("{:<8} {:>18} {:>14}", "order", "p_kill", "error_vs_128");
    for order in [2, 4, 6, 8, 10, 16, 24, 40] {
        let p = mean_kill_probability(&le, &km, &gauss_hermite(order).expect("rule"));
        println!("{order:<8} {p:>18.12} {:>14.3e}", (p - reference).abs());
    }
    println!("\nreference (order 128): {reference:.12}");
}
