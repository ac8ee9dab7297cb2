//! Command-line front end: load a scenario, generate requests, run the
//! sequential placement simulation, and write CSV/metadata outputs.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use placesim::appmodel::{generate_requests, RequestPattern};
use placesim::scenario::Scenario;
use placesim::simulator::{
    run, run_with_lp_export, write_csv, write_meta, RunMeta, SimulationResult,
};

#[derive(Debug, Parser)]
#[command(
    name = "placesim",
    version,
    about = "Sequential placement simulation for offloaded applications across cloud, carrier-edge and user-edge tiers"
)]
struct Args {
    /// Request mix: p1 (fixed random requirement), p2 (cost-cap ladder),
    /// p3 (response-cap ladder)
    #[arg(
        long,
        required_unless_present = "all_patterns",
        conflicts_with = "all_patterns"
    )]
    pattern: Option<RequestPattern>,

    /// Number of requests to generate
    #[arg(long, default_value_t = 800)]
    requests: usize,

    /// RNG seed for request generation
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Scenario JSON file (omit for the built-in default scenario)
    #[arg(long)]
    scenario: Option<PathBuf>,

    /// Output directory for steps.csv, curves.csv and meta.txt
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Also write one request_<id>.lp model file per request
    #[arg(long)]
    export_lp: bool,

    /// Run p1, p2 and p3 with the same seed into out/p1, out/p2, out/p3
    #[arg(long)]
    all_patterns: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn execute(args: &Args) -> anyhow::Result<()> {
    let scenario = match &args.scenario {
        Some(path) => Scenario::from_path(path)
            .with_context(|| format!("cannot load scenario {}", path.display()))?,
        None => Scenario::builtin_default(),
    };
    let scenario_hash = scenario.sha256_hex();

    let patterns: Vec<RequestPattern> = match args.pattern {
        Some(pattern) => vec![pattern],
        None => RequestPattern::ALL.to_vec(),
    };

    for pattern in patterns {
        let dir = if args.all_patterns {
            args.out.join(pattern.to_string())
        } else {
            args.out.clone()
        };

        let requests = generate_requests(pattern, args.requests, args.seed, &scenario);
        let mut topology = scenario.build_topology()?;
        let meta = RunMeta {
            seed: args.seed,
            pattern,
            scenario_name: scenario.name.clone(),
            scenario_hash: scenario_hash.clone(),
        };
        let result: SimulationResult = if args.export_lp {
            run_with_lp_export(&mut topology, &requests, meta, &dir)?
        } else {
            run(&mut topology, &requests, meta)
        };

        write_csv(&result, &dir)?;
        write_meta(&result, &dir)?;

        let final_price = result.running_avg_price.last().copied().unwrap_or(0.0);
        let final_response = result.running_avg_response.last().copied().unwrap_or(0.0);
        println!(
            "{pattern}: {} requests, {} placed, {} rejected, final averages {:.2} USD/month and {:.2} s -> {}",
            result.records.len(),
            result.placed_count(),
            result.rejection_count,
            final_price,
            final_response,
            dir.display()
        );
    }
    Ok(())
}
