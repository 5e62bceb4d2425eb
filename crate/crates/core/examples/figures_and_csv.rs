//! Writes the two depth figures and a CSV time series into a directory.
//!
//! `cargo run --example figures_and_csv -- out/`

use std::path::PathBuf;

use squeezed_bath::cli::config::RunConfig;
use squeezed_bath::cli::evolve::evolve_csv;
use squeezed_bath::cli::figures::{crossing_marker_px, px_to_x, write_figures};
use squeezed_bath::cli::CliError;

const CONFIG: &str = r#"{
    "state": {"kind": "photon_added_thermal", "nbar": 1.0},
    "reservoir": {"n": 2.0, "m": 1.0},
    "time_grid": {"start": 0.0, "stop": 2.0, "step": 0.05},
    "outputs": ["moments", "tau_m"]
}"#;

fn main() -> Result<(), CliError> {
    let dir = std::env::args().nth(1).map_or_else(|| PathBuf::from("figures"), PathBuf::from);
    for path in write_figures(&dir)? {
        let svg = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
        let cx = crossing_marker_px(&svg).unwrap_or(f64::NAN);
        println!("{} (crossing marker at Γt ≈ {:.3})", path.display(), px_to_x(cx));
    }

    let scenario = RunConfig::parse(CONFIG)?.scenario()?;
    let csv = evolve_csv(&scenario, false)?;
    let path = dir.join("photon_added_thermal.csv");
    std::fs::write(&path, &csv).map_err(|e| CliError::io(&path, e))?;
    println!("{} ({} rows)", path.display(), csv.lines().count() - 1);
    Ok(())
}
