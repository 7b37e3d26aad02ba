use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use ringscat::config::RunConfig;
use ringscat::error::CliError;
use ringscat::output::OutputDir;
use ringscat::scenarios::{self, SCENARIOS};

#[derive(Parser)]
#[command(name = "ringscat", version, about = "Charged Klein-Gordon scattering on the De Sitter-Reissner-Nordström exterior")]
struct Cli {
    /// One of: verify-geometry, evolve, scatter, trace, goursat,
    /// superradiance-scan, geodesics.
    scenario: String,
    /// TOML configuration, or JSON when the file name ends in `.json`.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory; overrides `output_dir` in the configuration.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sampler seed; overrides `seed` in the configuration.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for the parallel scans.
    #[arg(long)]
    threads: Option<usize>,
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if !SCENARIOS.contains(&cli.scenario.as_str()) {
        return Err(CliError::UnknownScenario(cli.scenario.clone()));
    }
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("--threads: {e}")))?;
    }
    let seed = cli.seed.or(cfg.seed).unwrap_or(0);
    let dir = cli.out.clone().or_else(|| cfg.output_dir.as_ref().map(PathBuf::from));
    let out = match &dir {
        Some(d) => OutputDir::new(d)?,
        None => OutputDir::discard(),
    };
    let summary = scenarios::run(&cli.scenario, &cfg, &out, seed)?;
    for c in &summary.checks {
        println!("{} {} = {:.3e} ({} {:.1e})", if c.pass { "PASS" } else { "FAIL" }, c.name, c.value, c.relation, c.threshold);
    }
    for (name, v) in &summary.measurements {
        println!("     {name} = {v:.6e}");
    }
    println!("{}: {}", summary.scenario, if summary.pass { "pass" } else { "fail" });
    Ok(summary.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
