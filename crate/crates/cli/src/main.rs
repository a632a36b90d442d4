use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use adskg_cli::runner;
use adskg_cli::scenario::Scenario;

#[derive(Parser)]
#[command(
    name = "adskg",
    about = "Spectral Kaluza-Klein solver and verification engine for the wave equation with an inverse-square potential"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scenario: path to a JSON file, or the name of a bundled scenario
    /// (see `adskg list`).
    #[arg(long, global = true)]
    scenario: Option<String>,

    /// Output directory for artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for randomised test data; ignored by deterministic data.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Write the mode spectrum (brane eigendata or half-line mode grid).
    Spectrum,
    /// Evolve the scenario and write field snapshots, tower and energies.
    Evolve,
    /// Run the scenario's checks; exit 0 iff all pass.
    Verify,
    /// Run only the finite-difference oracle comparisons.
    OracleCompare,
    /// List the bundled scenarios.
    List,
}

fn load_scenario(arg: &Option<String>) -> Result<Scenario, String> {
    let Some(spec) = arg else {
        return Err("--scenario <path-or-name> is required".into());
    };
    if let Some(s) = adskg_cli::bundled::load(spec) {
        return Ok(s);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| format!("cannot read scenario '{spec}': {e}"))?;
    Scenario::from_json(&text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: could not set thread count: {e}");
        }
    }

    if matches!(cli.command, Command::List) {
        for name in adskg_cli::bundled::NAMES {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }

    let scenario = match load_scenario(&cli.scenario) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let out = cli.out.as_deref();
    let result = match cli.command {
        Command::Spectrum => {
            let dir = out.unwrap_or_else(|| std::path::Path::new("out"));
            runner::cmd_spectrum(&scenario, dir, cli.seed).map(|()| true)
        }
        Command::Evolve => {
            let dir = out.unwrap_or_else(|| std::path::Path::new("out"));
            runner::cmd_evolve(&scenario, dir, cli.seed).map(|()| true)
        }
        Command::Verify => runner::cmd_verify(&scenario, out, cli.seed).map(|summary| {
            for r in &summary.reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                println!("[{status}] {}: {}", r.check_name, summarise(&r.measured));
            }
            summary.all_passed()
        }),
        Command::OracleCompare => runner::cmd_oracle_compare(&scenario, out, cli.seed).map(|summary| {
            for r in &summary.reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                println!("[{status}] {}: {}", r.check_name, summarise(&r.measured));
            }
            summary.all_passed()
        }),
        Command::List => unreachable!(),
    };

    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn summarise(measured: &std::collections::BTreeMap<String, f64>) -> String {
    measured
        .iter()
        .take(4)
        .map(|(k, v)| format!("{k}={v:.3e}"))
        .collect::<Vec<_>>()
        .join(", ")
}
