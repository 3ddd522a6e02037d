//! Cumulative neutralization probability versus dwell time for three target
//! hardness classes. Vulnerable targets saturate within milliseconds;
//! hardened ones accumulate slowly.

use hpm_engage::kill::cumulative_kill_probability;
use hpm_engage::scenario::Scenario;

fn main() {
    let thresholds = [1e-3, 1e-2, 1e-1];
    let p_kill: Vec<f64> = thresholds
        .iter()
        .map(|&eth| {
            let mut s = Scenario::baseline();
            s.kill.e_threshold_j = eth;
            s.evaluate().expect("evaluate").p_kill
        })
        .collect();

    println!("dwell_s,p_tot_eth_1e-3,p_tot_eth_1e-2,p_tot_eth_1e-1");
    let prf = Scenario::baseline().tx.prf_hz;
    for i in 0..=100 {
        let t = i as f64 * 0.01; // 0 .. 1 s
        let row: Vec<String> = p_kill
            .iter()
            .map(|&p| format!("{:.6e}", cumulative_kill_probability(p, prf, t)))
            .collect();
        println!("{t:.2},{}", row.join(","));
    }

    for (eth, p) in thresholds.iter().zip(&p_kill) {
        let t99 = if *p > 0.0 {
            (0.01f64.ln() / (1.0 - p).ln()) / prf
        } else {
            f64::INFINITY
        };
        eprintln!("E_th={eth:.0e} J: p_kill={p:.4}, 99% cumulative after {t99:.4} s");
    }
}
