//! `srs` — experiment runner for the self-regulated swarm simulator.
//!
//! `srs run --preset <name>` executes seeded repeats of one experiment;
//! `srs sweep --preset <name> --param v --values 0,0.5,1` varies one dynamics
//! parameter. Exit codes: 0 success, 2 configuration error, 1 runtime
//! failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use srs_core::experiment::{
    resolve_config, run_experiment, run_sweep, ConfigOverrides, ExperimentError, Preset, RunResult,
    SweepParam,
};
use srs_core::swarm::SurvivalMode;

#[derive(Parser)]
#[command(name = "srs", version, about = "Self-regulated swarm simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment configuration (repeats x t_max colony steps).
    Run(RunArgs),
    /// Run a parameter sweep over a list of values.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Experiment preset: ackley-speed, ackley-jump, schaffer-severity,
    /// schaffer-frequency or control.
    #[arg(long)]
    preset: Option<String>,
    /// Config file with `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Path speed in cells/step (ackley-speed).
    #[arg(long, allow_negative_numbers = true)]
    v: Option<f64>,
    /// Drift severity per environmental change (schaffer, control).
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    /// Steps between environmental changes.
    #[arg(long)]
    uf: Option<u32>,
    #[arg(long)]
    t_max: Option<u64>,
    /// Master seed; per-repeat seeds are derived from it.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    repeats: Option<u32>,
    /// Parallel runs (0 = all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Capture tolerance in objective-value units.
    #[arg(long, allow_negative_numbers = true)]
    eps: Option<f64>,
    /// Output directory for manifest, per-run CSVs and summary CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Pheromone snapshot cadence in steps (0 disables).
    #[arg(long)]
    snapshots: Option<u64>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eta: Option<f64>,
    /// Pheromone evaporation rate per step, between 0 and 1.
    #[arg(long, allow_negative_numbers = true)]
    evaporation: Option<f64>,
    /// Gain on the altitude-coupled deposition term.
    #[arg(long, allow_negative_numbers = true)]
    deposition_gain: Option<f64>,
    /// Per-step energy decrement.
    #[arg(long, allow_negative_numbers = true)]
    delta_e: Option<f64>,
    /// Fraction of cells seeded with an agent, in (0,1).
    #[arg(long, allow_negative_numbers = true)]
    initial_density: Option<f64>,
    /// stochastic | deterministic
    #[arg(long)]
    survival_mode: Option<String>,
    /// RK4 step count for the control fitness.
    #[arg(long)]
    ode_steps: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Parameter to vary: v, s or uf.
    #[arg(long)]
    param: String,
    /// Comma-separated values, e.g. 0,0.5,1,1.5,2,3,5,10.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    values: Vec<f64>,
}

enum CliError {
    Config(String),
    Runtime(String),
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Config(c) => CliError::Config(c.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

fn overrides_from(args: &CommonArgs) -> Result<ConfigOverrides, CliError> {
    let preset = args
        .preset
        .as_deref()
        .map(|p| p.parse::<Preset>())
        .transpose()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let survival_mode = args
        .survival_mode
        .as_deref()
        .map(|m| m.parse::<SurvivalMode>())
        .transpose()
        .map_err(CliError::Config)?;
    Ok(ConfigOverrides {
        preset,
        width: args.width,
        height: args.height,
        t_max: args.t_max,
        speed: args.v,
        severity: args.s,
        update_freq: args.uf,
        ode_steps: args.ode_steps,
        seed: args.seed,
        repeats: args.repeats,
        jobs: args.jobs,
        eps: args.eps,
        out_dir: args.out.clone(),
        snapshot_every: args.snapshots,
        beta: args.beta,
        gamma: args.gamma,
        eta: args.eta,
        evaporation: args.evaporation,
        deposition_gain: args.deposition_gain,
        delta_e: args.delta_e,
        initial_density: args.initial_density,
        survival_mode,
        reset_extremes_on_change: None,
        children_age_immediately: None,
    })
}

fn load_file(path: Option<&PathBuf>) -> Result<Option<ConfigOverrides>, CliError> {
    match path {
        None => Ok(None),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("config file {}: {e}", p.display())))?;
            ConfigOverrides::parse_file(&text)
                .map(Some)
                .map_err(|e| CliError::Config(e.to_string()))
        }
    }
}

fn print_results(results: &[RunResult]) {
    println!(
        "{:<28} {:>6} {:>12} {:>15} {:>10}",
        "run", "seed", "success_rate", "median_reaction", "final_pop"
    );
    for r in results {
        let reaction = r
            .summary
            .median_reaction()
            .map(|m| format!("{m}"))
            .unwrap_or_else(|| "-".to_string());
        println!(
            "{:<28} {:>6} {:>12.3} {:>15} {:>10}",
            r.run_id,
            r.seed,
            r.summary.success_rate,
            reaction,
            r.summary.final_population()
        );
    }
}

fn run(args: &RunArgs) -> Result<(), CliError> {
    let file = load_file(args.common.config.as_ref())?;
    let mut flags = overrides_from(&args.common)?;
    // single runs snapshot every 25 steps by default when writing output
    if flags.snapshot_every.is_none()
        && file.as_ref().and_then(|f| f.snapshot_every).is_none()
        && (flags.out_dir.is_some() || file.as_ref().and_then(|f| f.out_dir.as_ref()).is_some())
    {
        flags.snapshot_every = Some(25);
    }
    let cfg = resolve_config(file.as_ref(), &flags).map_err(|e| CliError::Config(e.to_string()))?;
    let results = run_experiment(&cfg)?;
    print_results(&results);
    if let Some(out) = &cfg.out_dir {
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn sweep(args: &SweepArgs) -> Result<(), CliError> {
    let file = load_file(args.common.config.as_ref())?;
    let flags = overrides_from(&args.common)?;
    let param: SweepParam = args
        .param
        .parse()
        .map_err(|e: srs_core::experiment::ConfigError| CliError::Config(e.to_string()))?;
    let cfg = resolve_config(file.as_ref(), &flags).map_err(|e| CliError::Config(e.to_string()))?;
    let results = run_sweep(&cfg, param, &args.values)?;
    print_results(&results);
    if let Some(out) = &cfg.out_dir {
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => run(args),
        Command::Sweep(args) => sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
