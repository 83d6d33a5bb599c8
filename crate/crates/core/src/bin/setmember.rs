use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use setmember::runner::{export_plot, run, RunConfig, RunReport};
use setmember::Error;

#[derive(Parser)]
#[command(version, about = "Exact set-membership state estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the recursion on a JSON configuration and write report.json.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also run the exact set recursion and record missed vertices.
        #[arg(long)]
        oracle: bool,
        /// Override the measurement seed of a seeded configuration.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Convert a report into CSV plot data.
    ExportPlot {
        report: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn execute(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Run { config, out, oracle, seed } => {
            let text = std::fs::read_to_string(&config)?;
            let cfg = RunConfig::from_json(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", config.display())))?;
            let report = run(&cfg, seed, oracle)?;
            let path = report.write(&out)?;
            eprintln!("wrote {} ({} steps, {:?})", path.display(), report.steps.len(), report.status);
            Ok(report.status.exit_code())
        }
        Command::ExportPlot { report, out } => {
            let text = std::fs::read_to_string(&report)?;
            let parsed: RunReport = serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", report.display())))?;
            for path in export_plot(&parsed, &out)? {
                eprintln!("wrote {}", path.display());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    match execute(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
