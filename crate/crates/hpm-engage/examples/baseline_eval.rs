//! Evaluate the reference engagement end to end and print every derived
//! statistic: range/gain/attenuation moments, log-energy closure, mean
//! received energy, and the per-pulse and cumulative kill probabilities.

use hpm_engage::link::pulse_count;
use hpm_engage::scenario::Scenario;

fn main() {
    let scenario = Scenario::baseline();
    for warning in scenario.validate().expect("baseline must validate") {
        eprintln!("warning: {warning}");
    }
    let s = scenario.evaluate().expect("baseline must evaluate");

    println!("reference engagement");
    println!("  range      mean {:.1} m, var {:.1} m^2 (cv2 {:.2e})", s.range.mean_m, s.range.var_m2, s.range.cv2);
    println!("  gain       G0 {:.1}, jitter-averaged {:.1} (var {:.3e})", s.gain.g0, s.gain.mean, s.gain.var);
    println!("  atten      mu_A {:.3} dB, sigma2_A {:.3e} dB^2", s.atten.mu_a_db, s.atten.sigma2_a_db2);
    println!("  log-energy mu_lnE {:.4}, sigma2_lnE {:.4e}", s.log_energy.mu_ln_e, s.log_energy.sigma2_ln_e);
    println!("  mean_E     {:.4e} J", s.mean_energy_j);
    println!(
        "  dwell      {:.0} pulses in {} s",
        pulse_count(scenario.tx.prf_hz, scenario.dwell_s),
        scenario.dwell_s
    );
    println!("  p_kill     {:.6}", s.p_kill);
    println!("  p_tot      {:.6}", s.p_tot);
    println!();
    println!(
        "note: mean received energy is {:.1e}x the kill threshold; the kill",
        s.mean_energy_j / scenario.kill.e_threshold_j
    );
    println!("probability is governed by the logistic response at this energy level.");
}
