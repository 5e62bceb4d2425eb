//! Truncated Fock-space master equation as an independent check.
//!
//! `cargo run --release --example fock_oracle`

use num_complex::Complex64;
use squeezed_bath::evolution::moments_at;
use squeezed_bath::fock_oracle::{default_dt, integrate_grid, moments_from_rho, prepare, QuasiprobGrid};
use squeezed_bath::nonclassicality::tau_m;
use squeezed_bath::{ReservoirParams, StateSpec};

fn main() -> squeezed_bath::Result<()> {
    let res = ReservoirParams::new(1.0, 2.0, 1.0)?;
    let state = StateSpec::photon_added_coherent(1.0, 0.0);
    let dim = 96;
    let dt = default_dt(&res, dim);

    let rho0 = prepare(&state, dim)?;
    println!("dim {dim}, dt {dt:.2e}, population beyond truncation {:.1e}", rho0.leakage());

    let times = [0.0, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0];
    let evolved = integrate_grid(&rho0, &res, &times, dt)?;
    println!("{:>5} {:>14} {:>14} {:>10}", "Γt", "<a†²a²> oracle", "analytic", "rel diff");
    for (t, rho) in times.iter().zip(&evolved) {
        let o = moments_from_rho(rho).mean_ad2_a2();
        let a = moments_at(&state, &res, *t)?.mean_ad2_a2();
        println!("{t:>5} {o:>14.10} {a:>14.10} {:>10.2e}", (o - a).abs() / a);
    }

    // Depth from the Fock-space series, valid for τ > 1/2.
    let rho = &evolved[1];
    let grid = QuasiprobGrid::new(rho, Complex64::new(0.0, 0.0), 2.0, 0.1);
    match grid.depth(1e-6)? {
        Some(d) => println!("\nΓt = 0.05: series depth {d:.4}, closed form {:.4}", tau_m(&state, &res, 0.05)?),
        None => println!("\nΓt = 0.05: depth below the series range"),
    }
    Ok(())
}
