//! Phase-space moments against the truncated master equation at 128 levels.

use squeezed_bath::cli::config::{OracleConfig, OutputKind, Scenario, TimeGrid};
use squeezed_bath::cli::validate::compare;
use squeezed_bath::{ReservoirParams, StateSpec};

fn scenarios() -> Vec<Scenario> {
    let baths = [
        ReservoirParams::new(1.0, 1.0, -(2f64.sqrt())).unwrap(),
        ReservoirParams::new(1.0, 2.0, 1.0).unwrap(),
        ReservoirParams::new(1.0, 1.0, 0.0).unwrap(),
    ];
    let states = [
        StateSpec::coherent(1.0, 0.0),
        StateSpec::thermal(1.0),
        StateSpec::squeezed_coherent(1.0, 0.0, 1.0),
        StateSpec::photon_added_coherent(1.0, 0.0),
        StateSpec::photon_added_thermal(1.0),
        StateSpec::cat(1.0, 0.0, 0.0),
    ];
    baths
        .iter()
        .flat_map(|res| {
            states.iter().map(move |state| Scenario {
                state: *state,
                reservoir: *res,
                grid: TimeGrid { start: 0.0, stop: 2.0, step: 0.1 },
                outputs: vec![OutputKind::Moments, OutputKind::Variances],
                oracle: OracleConfig { enabled: true, dim: Some(128), dt: None },
            })
        })
        .collect()
}

#[test]
fn analytics_track_master_equation() {
    let mut failures = Vec::new();
    for sc in scenarios() {
        for d in compare(&sc).unwrap() {
            if !d.passed {
                failures.push(format!(
                    "{} N={} M={}: {} rel {:.2e} abs {:.2e}",
                    sc.state.kind(),
                    sc.reservoir.big_n(),
                    sc.reservoir.big_m(),
                    d.name,
                    d.max_rel,
                    d.max_abs
                ));
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
