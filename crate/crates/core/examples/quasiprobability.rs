//! The τ-smoothed quasiprobability R(z, τ) and a grid estimate of the
//! nonclassical depth.
//!
//! `cargo run --release --example quasiprobability`

use num_complex::Complex64;
use squeezed_bath::nonclassicality::{numeric_depth, r_function, tau_m};
use squeezed_bath::{ReservoirParams, StateSpec};

fn main() -> squeezed_bath::Result<()> {
    let res = ReservoirParams::new(1.0, 2.0, 1.0)?;
    let state = StateSpec::photon_added_coherent(1.0, 0.0);

    // Along the real axis at Γt = 0.05: negative dip below the depth, none above it.
    let gt = 0.05;
    let depth = tau_m(&state, &res, gt)?;
    println!("photon-added coherent, Γt = {gt}, τ_m = {depth:.6}");
    for tau in [0.6, depth + 0.01, 1.0] {
        let row: Vec<String> = (-8..=8)
            .map(|i| r_function(&state, &res, gt, tau, Complex64::new(0.25 * i as f64, 0.0)))
            .map(|v| v.map(|v| format!("{v:+.3}")))
            .collect::<Result<_, _>>()?;
        println!("  τ = {tau:.3}: {}", row.join(" "));
    }

    println!("\nnumeric depth vs closed form");
    for state in [StateSpec::photon_added_coherent(1.0, 0.0), StateSpec::photon_added_thermal(1.0)] {
        for gt in [0.02, 0.05, 0.1] {
            println!(
                "  {:<22} Γt = {gt:<5} grid {:.4}  table {:.4}",
                state.kind(),
                numeric_depth(&state, &res, gt)?,
                tau_m(&state, &res, gt)?
            );
        }
    }
    Ok(())
}
