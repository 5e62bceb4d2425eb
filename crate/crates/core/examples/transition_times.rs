//! When each state stops (or starts) being nonclassical.
//!
//! `cargo run --example transition_times`

use squeezed_bath::nonclassicality::{closed_form_transition, tau_m, transition_time, Transition};
use squeezed_bath::{ReservoirParams, StateSpec};

fn main() -> squeezed_bath::Result<()> {
    let ideal = ReservoirParams::new(1.0, 1.0, -(2f64.sqrt()))?;
    let warm = ReservoirParams::new(1.0, 2.0, 1.0)?;
    let plain = ReservoirParams::new(1.0, 1.0, 0.0)?;

    let cases = [
        ("thermal, ideal bath", StateSpec::thermal(1.0), ideal),
        ("squeezed coherent, N=2 M=1", StateSpec::squeezed_coherent(1.0, 0.0, 1.0), warm),
        ("photon-added coherent, N=2 M=1", StateSpec::photon_added_coherent(1.0, 0.0), warm),
        ("photon-added thermal, N=2 M=1", StateSpec::photon_added_thermal(1.0), warm),
        ("coherent, ideal bath", StateSpec::coherent(1.0, 0.0), ideal),
        ("thermal, unsqueezed bath", StateSpec::thermal(1.0), plain),
    ];
    for (label, state, res) in cases {
        let outcome = match transition_time(&state, &res)? {
            Transition::Crossing(t) => format!("Γt = {t:.10}"),
            Transition::Immediate => "immediately nonclassical".into(),
            Transition::Never => "never".into(),
        };
        let closed = closed_form_transition(&state, &res)?.map_or("-".to_string(), |t| format!("{t:.10}"));
        println!("{label:<32} {outcome:<28} closed form {closed}");
    }

    println!("\ndepth of the thermal state in the ideal bath");
    let state = StateSpec::thermal(1.0);
    for gt in [0.0, 0.5, 0.6, 0.61397, 0.7, 1.0, 3.0] {
        println!("  Γt = {gt:<8} τ_m = {:.6}", tau_m(&state, &ideal, gt)?);
    }
    Ok(())
}
