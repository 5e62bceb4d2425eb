//! Drives the command-line front end in-process, as `sqbath` would.
//!
//! `cargo run --example run_config`

use clap::Parser;
use squeezed_bath::cli::{run, Cli};

fn main() {
    let dir = std::env::temp_dir().join("sqbath-example");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("cat.json");
    std::fs::write(
        &config,
        r#"{
            "state": {"kind": "cat", "amplitude": [1.0, 0.0], "phi": 0.0},
            "reservoir": {"nbar0": 0.0, "r": 0.5, "theta": 3.141592653589793},
            "time_grid": {"start": 0.0, "stop": 1.0, "step": 0.25}
        }"#,
    )
    .unwrap();
    let config = config.to_str().unwrap();

    let mut out = std::io::stdout();
    for args in [
        vec!["sqbath", "transition-time", "--config", config],
        vec!["sqbath", "evolve", "--config", config],
        vec!["sqbath", "evolve", "--config", config, "--oracle", "--dim", "48"],
    ] {
        println!("$ {}", args.join(" "));
        let cli = Cli::parse_from(&args);
        if let Err(e) = run(&cli, &mut out) {
            eprintln!("error (exit {}): {e}", e.exit_code());
        }
        println!();
    }
}
