//! Mean field, photon statistics and quadrature variances over time.
//!
//! `cargo run --example moment_evolution`

use squeezed_bath::evolution::{mandel_q, moments_at, quadrature_variances};
use squeezed_bath::{ReservoirParams, StateSpec};

fn main() -> squeezed_bath::Result<()> {
    let res = ReservoirParams::new(1.0, 2.0, 1.0)?;
    let states = [
        StateSpec::coherent(1.0, 0.0),
        StateSpec::squeezed_coherent(1.0, 0.0, 1.0),
        StateSpec::photon_added_coherent(1.0, 0.0),
        StateSpec::photon_added_thermal(1.0),
        StateSpec::cat(1.0, 0.0, 0.0),
    ];
    for state in &states {
        println!("{} in N = 2, M = 1", state.kind());
        println!("  {:>5} {:>10} {:>10} {:>10} {:>10} {:>10}", "Γt", "Re<a>", "<n>", "Q", "V_X", "V_Y");
        for gt in [0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 10.0] {
            let m = moments_at(state, &res, gt)?;
            let (vx, vy) = quadrature_variances(state, &res, gt)?;
            println!(
                "  {gt:>5} {:>10.6} {:>10.6} {:>10.6} {vx:>10.6} {vy:>10.6}",
                m.mean_a().re,
                m.mean_n(),
                mandel_q(state, &res, gt)?
            );
        }
        println!();
    }
    println!("steady-state Q = (N² + M²)/N = {}", (4.0 + 1.0) / 2.0);
    Ok(())
}
