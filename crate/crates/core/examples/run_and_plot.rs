//! The library side of the `setmember run` and `export-plot` subcommands:
//! run a configuration and write report.json, sets.csv and cones.csv.
//!
//! ```bash
//! cargo run --example run_and_plot -- examples/configs/seeded_second_order.json target/plot-demo
//! ```

use std::path::PathBuf;

use setmember::runner::{export_plot, run, RunConfig};

fn main() -> setmember::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/demo.json").into());
    let out = PathBuf::from(args.next().unwrap_or_else(|| "target/plot-demo".into()));
    let cfg = RunConfig::from_json(&std::fs::read_to_string(&config)?)?;
    let report = run(&cfg, None, false)?;
    println!("status {:?}, {} steps", report.status, report.steps.len());
    println!("wrote {}", report.write(&out)?.display());
    for path in export_plot(&report, &out)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
