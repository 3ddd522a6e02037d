//! Per-pulse kill probability versus the damage threshold: sweeps E_th over
//! three decades and emits plot-ready CSV on stdout.

use hpm_engage::scenario::Scenario;
use hpm_engage::sweep::{rows_to_csv, run_sweep, SweepParam, SweepScale, SweepSpec};

fn main() {
    let spec = SweepSpec {
        parameter: SweepParam::EThreshold,
        scale: SweepScale::Logarithmic,
        start: 1e-3,
        stop: 1.0,
        points: 50,
    };
    let rows = run_sweep(&Scenario::baseline(), &spec).expect("sweep");
    print!("{}", rows_to_csv(&rows));
    eprintln!(
        "p_kill falls from {:.4} to {:.2e} as the threshold hardens",
        rows.first().unwrap().p_kill,
        rows.last().unwrap().p_kill
    );
}
