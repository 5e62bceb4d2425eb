//! Raw reservoir coefficients from a physical description.
//!
//! `cargo run --example reservoir_parameters`

use squeezed_bath::{PhysicalReservoirSpec, ReservoirParams, SqueezePhase};

fn main() -> squeezed_bath::Result<()> {
    println!("{:>6} {:>6} {:>6} {:>10} {:>10} {:>8} {:>8}", "nbar0", "r", "theta", "N", "M", "ideal", "depth");
    for (nbar0, r, theta) in [
        (0.0, 0.5, SqueezePhase::Zero),
        (0.0, 0.5, SqueezePhase::Pi),
        (1.0, 0.5, SqueezePhase::Zero),
        (0.5, 1.0, SqueezePhase::Pi),
        (2.0, 0.0, SqueezePhase::Zero),
    ] {
        let res = ReservoirParams::from_physical(PhysicalReservoirSpec { nbar0, r, theta }, 1.0)?;
        println!(
            "{nbar0:>6.2} {r:>6.2} {:>6.3} {:>10.6} {:>10.6} {:>8} {:>8.4}",
            theta.cos().acos(),
            res.big_n(),
            res.big_m(),
            res.is_ideally_squeezed(),
            res.steady_state_depth()
        );
    }

    // N_t and M_t grow from zero towards N and M.
    let res = ReservoirParams::new(1.0, 2.0, 1.0)?;
    println!("\nN = 2, M = 1");
    for gt in [0.0, 0.25, 0.5, 1.0, 2.0, 5.0] {
        println!("  Γt = {gt:<4}  N_t = {:.6}  M_t = {:.6}", res.nt(gt)?, res.mt(gt)?);
    }

    match ReservoirParams::new(1.0, 1.0, 2.0) {
        Ok(_) => unreachable!(),
        Err(e) => println!("\nM² > N(N+1) is rejected: {e}"),
    }
    Ok(())
}
