//! Seeded, reproducible experiment runner: preset configurations, config-file
//! and flag overrides, parameter sweeps, per-run CSVs, a run manifest, and
//! optional pheromone-field snapshots.
//!
//! Runs are independent work items (one derived seed per repeat) and may
//! execute on a bounded worker pool; outputs are written after collection in
//! a fixed order, so byte-identical results do not depend on the job count.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::habitat::HabitatGrid;
use crate::landscape::Landscape;
use crate::metrics::{
    format_float, record_step, write_records_csv, write_summary_csv, MetricsError, RunSummary,
    SummaryRow,
};
use crate::swarm::{Colony, SurvivalMode, SwarmParams};

/// The experiment families reproduced by the runner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// Ackley minimum traveling the NW-SE diagonal at a configurable speed.
    AckleySpeed,
    /// Ackley minimum jumping B -> C -> A every `uf` steps.
    AckleyJump,
    /// Schaffer F7 drifting by severity `s` every `uf` steps.
    SchafferSeverity,
    /// Schaffer F7 at fixed severity with varying update frequency.
    SchafferFrequency,
    /// Optimal-control fitness drifting by severity `s` every `uf` steps.
    Control,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::AckleySpeed,
        Preset::AckleyJump,
        Preset::SchafferSeverity,
        Preset::SchafferFrequency,
        Preset::Control,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::AckleySpeed => "ackley-speed",
            Preset::AckleyJump => "ackley-jump",
            Preset::SchafferSeverity => "schaffer-severity",
            Preset::SchafferFrequency => "schaffer-frequency",
            Preset::Control => "control",
        }
    }

    /// The parameter a plain `run` reports and a bare `sweep` varies.
    pub fn canonical_param(self) -> SweepParam {
        match self {
            Preset::AckleySpeed => SweepParam::Speed,
            Preset::AckleyJump => SweepParam::UpdateFreq,
            Preset::SchafferSeverity => SweepParam::Severity,
            Preset::SchafferFrequency => SweepParam::UpdateFreq,
            Preset::Control => SweepParam::Severity,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Preset {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| ConfigError::UnknownPreset(s.to_string()))
    }
}

/// Which dynamics parameter a sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    Speed,
    Severity,
    UpdateFreq,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Speed => "v",
            SweepParam::Severity => "s",
            SweepParam::UpdateFreq => "uf",
        }
    }

    fn applies_to(self, preset: Preset) -> bool {
        match self {
            SweepParam::Speed => preset == Preset::AckleySpeed,
            SweepParam::Severity => matches!(
                preset,
                Preset::SchafferSeverity | Preset::SchafferFrequency | Preset::Control
            ),
            SweepParam::UpdateFreq => preset != Preset::AckleySpeed,
        }
    }

    fn apply(self, cfg: &mut ExperimentConfig, value: f64) -> Result<(), ConfigError> {
        match self {
            SweepParam::Speed => {
                if value < 0.0 {
                    return Err(ConfigError::invalid("v", "must be non-negative"));
                }
                cfg.speed = value;
            }
            SweepParam::Severity => cfg.severity = value,
            SweepParam::UpdateFreq => {
                if value < 1.0 || value.fract() != 0.0 {
                    return Err(ConfigError::invalid("uf", "must be an integer >= 1"));
                }
                cfg.update_freq = value as u32;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for SweepParam {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "v" => Ok(SweepParam::Speed),
            "s" => Ok(SweepParam::Severity),
            "uf" => Ok(SweepParam::UpdateFreq),
            other => Err(ConfigError::invalid(
                "param",
                format!("unknown sweep parameter `{other}` (expected v, s or uf)"),
            )),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),
    #[error("invalid value for `{key}`: {detail}")]
    InvalidValue { key: String, detail: String },
    #[error("no preset given (flag --preset or config key `preset`)")]
    MissingPreset,
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("sweep parameter `{param}` does not apply to preset `{preset}`")]
    InapplicableParam { param: String, preset: String },
}

impl ConfigError {
    fn invalid(key: &str, detail: impl Into<String>) -> Self {
        ConfigError::InvalidValue {
            key: key.to_string(),
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("configuration: {0}")]
    Config(#[from] ConfigError),
    #[error("i/o on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("metrics: {0}")]
    Metrics(#[from] MetricsError),
}

/// Fully resolved experiment configuration: preset defaults overlaid by
/// config-file values overlaid by flag values.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub preset: Preset,
    pub width: usize,
    pub height: usize,
    pub t_max: u64,
    pub params: SwarmParams,
    /// Path speed in cells/step (ackley-speed).
    pub speed: f64,
    /// Drift severity per epoch (schaffer, control).
    pub severity: f64,
    /// Steps between environmental changes (jump and drift dynamics).
    pub update_freq: u32,
    /// Fixed RK4 step count for the control fitness.
    pub ode_steps: usize,
    pub seed: u64,
    pub repeats: u32,
    /// Worker pool size for parallel runs; 0 uses the global default.
    pub jobs: usize,
    /// Capture tolerance in objective-value units.
    pub eps: f64,
    pub out_dir: Option<PathBuf>,
    /// Write a pheromone snapshot every N steps; `None` disables.
    pub snapshot_every: Option<u64>,
}

impl ExperimentConfig {
    pub fn preset_defaults(preset: Preset) -> Self {
        let mut params = SwarmParams::default();
        let mut cfg = ExperimentConfig {
            preset,
            width: 100,
            height: 100,
            t_max: 100,
            params,
            speed: 2.0,
            severity: 0.1,
            update_freq: 50,
            ode_steps: 1000,
            seed: 42,
            repeats: 1,
            jobs: 0,
            eps: 0.05,
            out_dir: None,
            snapshot_every: None,
        };
        match preset {
            Preset::AckleySpeed => {}
            Preset::AckleyJump => cfg.update_freq = 5,
            Preset::SchafferSeverity => cfg.t_max = 400,
            Preset::SchafferFrequency => {
                cfg.t_max = 400;
                cfg.severity = 1.0;
                cfg.update_freq = 5;
            }
            Preset::Control => {
                cfg.t_max = 400;
                params.delta_e = 0.01;
                cfg.params = params;
            }
        }
        cfg.params.objective = cfg.landscape_objective();
        cfg
    }

    fn landscape_objective(&self) -> crate::Objective {
        match self.preset {
            Preset::AckleySpeed | Preset::AckleyJump => crate::Objective::Minimize,
            _ => crate::Objective::Maximize,
        }
    }

    /// Builds the landscape for the current dynamics parameters.
    pub fn landscape(&self) -> Landscape {
        match self.preset {
            Preset::AckleySpeed => Landscape::ackley_linear(self.width, self.height, self.speed),
            Preset::AckleyJump => Landscape::ackley_jump(self.width, self.height, self.update_freq),
            Preset::SchafferSeverity | Preset::SchafferFrequency => {
                Landscape::schaffer(self.width, self.height, self.severity, self.update_freq)
            }
            Preset::Control => Landscape::control(
                self.width,
                self.height,
                self.severity,
                self.update_freq,
                self.ode_steps,
            ),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.width < 3 || self.height < 3 {
            return Err(ConfigError::invalid(
                "width/height",
                "grid must be at least 3x3",
            ));
        }
        if self.t_max < 1 {
            return Err(ConfigError::invalid("t_max", "must be >= 1"));
        }
        if self.repeats < 1 {
            return Err(ConfigError::invalid("repeats", "must be >= 1"));
        }
        if self.update_freq < 1 {
            return Err(ConfigError::invalid("uf", "must be >= 1"));
        }
        if self.speed < 0.0 {
            return Err(ConfigError::invalid("v", "must be non-negative"));
        }
        if self.eps.is_nan() || self.eps <= 0.0 {
            return Err(ConfigError::invalid("eps", "must be positive"));
        }
        if self.ode_steps < 1 {
            return Err(ConfigError::invalid("ode_steps", "must be >= 1"));
        }
        if self.snapshot_every == Some(0) {
            return Err(ConfigError::invalid(
                "snapshots",
                "must be >= 1 (omit to disable)",
            ));
        }
        self.params
            .validate()
            .map_err(|detail| ConfigError::InvalidValue {
                key: "params".into(),
                detail,
            })?;
        Ok(())
    }

    /// Value of the preset's canonical parameter.
    pub fn canonical_value(&self) -> f64 {
        match self.preset.canonical_param() {
            SweepParam::Speed => self.speed,
            SweepParam::Severity => self.severity,
            SweepParam::UpdateFreq => self.update_freq as f64,
        }
    }
}

/// Partial configuration from one source (config file or CLI flags); later
/// sources win key by key.
#[derive(Clone, Debug, Default)]
pub struct ConfigOverrides {
    pub preset: Option<Preset>,
    pub width: Option<usize>,
    pub height: Option<usize>,
    pub t_max: Option<u64>,
    pub speed: Option<f64>,
    pub severity: Option<f64>,
    pub update_freq: Option<u32>,
    pub ode_steps: Option<usize>,
    pub seed: Option<u64>,
    pub repeats: Option<u32>,
    pub jobs: Option<usize>,
    pub eps: Option<f64>,
    pub out_dir: Option<PathBuf>,
    /// `Some(0)` explicitly disables snapshots.
    pub snapshot_every: Option<u64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub eta: Option<f64>,
    pub evaporation: Option<f64>,
    pub deposition_gain: Option<f64>,
    pub delta_e: Option<f64>,
    pub initial_density: Option<f64>,
    pub survival_mode: Option<SurvivalMode>,
    pub reset_extremes_on_change: Option<bool>,
    pub children_age_immediately: Option<bool>,
}

fn parse_typed<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError::invalid(key, format!("cannot parse `{value}`")))
}

impl ConfigOverrides {
    /// Parses the flat `key = value` config-file format. Blank lines and
    /// lines starting with `#` are ignored; unknown keys are rejected.
    pub fn parse_file(text: &str) -> Result<Self, ConfigError> {
        let mut o = ConfigOverrides::default();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::invalid(line, "expected `key = value`"))?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "preset" => o.preset = Some(value.parse()?),
                "width" => o.width = Some(parse_typed(key, value)?),
                "height" => o.height = Some(parse_typed(key, value)?),
                "t_max" => o.t_max = Some(parse_typed(key, value)?),
                "v" => o.speed = Some(parse_typed(key, value)?),
                "s" => o.severity = Some(parse_typed(key, value)?),
                "uf" => o.update_freq = Some(parse_typed(key, value)?),
                "ode_steps" => o.ode_steps = Some(parse_typed(key, value)?),
                "seed" => o.seed = Some(parse_typed(key, value)?),
                "repeats" => o.repeats = Some(parse_typed(key, value)?),
                "jobs" => o.jobs = Some(parse_typed(key, value)?),
                "eps" => o.eps = Some(parse_typed(key, value)?),
                "out" => o.out_dir = Some(PathBuf::from(value)),
                "snapshots" => o.snapshot_every = Some(parse_typed(key, value)?),
                "beta" => o.beta = Some(parse_typed(key, value)?),
                "gamma" => o.gamma = Some(parse_typed(key, value)?),
                "eta" => o.eta = Some(parse_typed(key, value)?),
                "evaporation" => o.evaporation = Some(parse_typed(key, value)?),
                "deposition_gain" => o.deposition_gain = Some(parse_typed(key, value)?),
                "delta_e" => o.delta_e = Some(parse_typed(key, value)?),
                "initial_density" => o.initial_density = Some(parse_typed(key, value)?),
                "survival_mode" => {
                    o.survival_mode = Some(
                        value
                            .parse()
                            .map_err(|e: String| ConfigError::invalid(key, e))?,
                    )
                }
                "reset_extremes_on_change" => {
                    o.reset_extremes_on_change = Some(parse_typed(key, value)?)
                }
                "children_age_immediately" => {
                    o.children_age_immediately = Some(parse_typed(key, value)?)
                }
                other => return Err(ConfigError::UnknownKey(other.to_string())),
            }
        }
        Ok(o)
    }

    fn apply(&self, cfg: &mut ExperimentConfig) {
        macro_rules! set {
            ($($field:ident => $target:expr),* $(,)?) => {
                $(if let Some(v) = self.$field.clone() { $target = v; })*
            };
        }
        set! {
            width => cfg.width,
            height => cfg.height,
            t_max => cfg.t_max,
            speed => cfg.speed,
            severity => cfg.severity,
            update_freq => cfg.update_freq,
            ode_steps => cfg.ode_steps,
            seed => cfg.seed,
            repeats => cfg.repeats,
            jobs => cfg.jobs,
            eps => cfg.eps,
            beta => cfg.params.beta,
            gamma => cfg.params.gamma,
            eta => cfg.params.eta,
            evaporation => cfg.params.evaporation,
            deposition_gain => cfg.params.deposition_gain,
            delta_e => cfg.params.delta_e,
            initial_density => cfg.params.initial_density,
            survival_mode => cfg.params.survival_mode,
            reset_extremes_on_change => cfg.params.reset_extremes_on_change,
            children_age_immediately => cfg.params.children_age_immediately,
        }
        if let Some(dir) = &self.out_dir {
            cfg.out_dir = Some(dir.clone());
        }
        if let Some(n) = self.snapshot_every {
            cfg.snapshot_every = if n == 0 { None } else { Some(n) };
        }
    }
}

/// Resolves preset defaults overlaid by file values overlaid by flag values,
/// then validates. The preset itself may come from either source, flags
/// winning.
pub fn resolve_config(
    file: Option<&ConfigOverrides>,
    flags: &ConfigOverrides,
) -> Result<ExperimentConfig, ConfigError> {
    let preset = flags
        .preset
        .or(file.and_then(|f| f.preset))
        .ok_or(ConfigError::MissingPreset)?;
    let mut cfg = ExperimentConfig::preset_defaults(preset);
    if let Some(file) = file {
        file.apply(&mut cfg);
    }
    flags.apply(&mut cfg);
    cfg.validate()?;
    Ok(cfg)
}

/// One finished run of `t_max` colony steps.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub run_id: String,
    /// Derived per-run seed actually fed to the RNG.
    pub seed: u64,
    /// `name=value` of the varied parameter.
    pub param_label: String,
    pub value: f64,
    pub repeat: u32,
    pub summary: RunSummary,
}

/// One mixing step over `master + repeat`; ordinary counters in, well-spread
/// seeds out.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Per-repeat seed: `splitmix64(master_seed + repeat)`. Repeats share seeds
/// across sweep values so sweeps are seed-paired.
pub fn derive_seed(master_seed: u64, repeat: u32) -> u64 {
    splitmix64(master_seed.wrapping_add(repeat as u64))
}

fn format_value(v: f64) -> String {
    format_float(v)
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> ExperimentError + '_ {
    move |source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn run_single(
    cfg: &ExperimentConfig,
    param: SweepParam,
    value: f64,
    repeat: u32,
) -> Result<RunResult, ExperimentError> {
    let mut local = cfg.clone();
    param.apply(&mut local, value)?;
    let seed = derive_seed(cfg.seed, repeat);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let landscape = local.landscape();
    let mut params = local.params;
    params.objective = landscape.objective();

    let run_id = format!(
        "{}_{}{}_r{}",
        local.preset.name(),
        param.name(),
        format_value(value),
        repeat
    );
    let snapshot_dir = match (&local.out_dir, local.snapshot_every) {
        (Some(out), Some(_)) => {
            let dir = out.join(&run_id);
            fs::create_dir_all(&dir).map_err(io_err(&dir))?;
            Some(dir)
        }
        _ => None,
    };

    let mut grid = HabitatGrid::new(local.width, local.height);
    let mut colony = Colony::init(&mut grid, params.initial_density, &mut rng);
    let mut records = Vec::with_capacity(local.t_max as usize);
    for t in 0..local.t_max {
        let outcome = colony.step(&mut grid, &landscape, t, &params, &mut rng);
        records.push(record_step(&outcome, &landscape, t, local.eps));
        if let (Some(dir), Some(every)) = (&snapshot_dir, local.snapshot_every) {
            if (t + 1) % every == 0 {
                let path = dir.join(format!("pheromone_t{}.pgm", t + 1));
                let mut buf = Vec::new();
                grid.write_pgm(&mut buf).map_err(io_err(&path))?;
                fs::write(&path, buf).map_err(io_err(&path))?;
            }
        }
    }
    let change_steps = landscape.change_steps(local.t_max);
    let summary = RunSummary::new(records, &change_steps)?;
    Ok(RunResult {
        run_id,
        seed,
        param_label: format!("{}={}", param.name(), format_value(value)),
        value,
        repeat,
        summary,
    })
}

fn execute(
    cfg: &ExperimentConfig,
    param: SweepParam,
    values: &[f64],
) -> Result<Vec<RunResult>, ExperimentError> {
    cfg.validate()?;
    if !param.applies_to(cfg.preset) {
        return Err(ConfigError::InapplicableParam {
            param: param.name().to_string(),
            preset: cfg.preset.name().to_string(),
        }
        .into());
    }
    for (i, v) in values.iter().enumerate() {
        if values[..i].contains(v) {
            return Err(
                ConfigError::invalid("values", format!("duplicate sweep value {v}")).into(),
            );
        }
    }

    let specs: Vec<(f64, u32)> = values
        .iter()
        .flat_map(|&v| (0..cfg.repeats).map(move |r| (v, r)))
        .collect();
    let body = || {
        specs
            .par_iter()
            .map(|&(value, repeat)| run_single(cfg, param, value, repeat))
            .collect::<Result<Vec<_>, _>>()
    };
    let results = if cfg.jobs == 0 {
        body()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .expect("worker pool")
            .install(body)?
    };

    if let Some(out) = &cfg.out_dir {
        write_outputs(cfg, param, values, &results, out)?;
    }
    Ok(results)
}

/// Runs `repeats` seeded runs of the configured experiment. With an output
/// directory set, writes `manifest.txt`, one `run_<id>.csv` per run and
/// `summary.csv` (plus snapshots when enabled).
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunResult>, ExperimentError> {
    execute(cfg, cfg.preset.canonical_param(), &[cfg.canonical_value()])
}

/// Runs `values.len() * repeats` runs varying `param`.
pub fn run_sweep(
    cfg: &ExperimentConfig,
    param: SweepParam,
    values: &[f64],
) -> Result<Vec<RunResult>, ExperimentError> {
    if values.is_empty() {
        return Err(ConfigError::invalid("values", "sweep needs at least one value").into());
    }
    execute(cfg, param, values)
}

fn write_outputs(
    cfg: &ExperimentConfig,
    param: SweepParam,
    values: &[f64],
    results: &[RunResult],
    out: &Path,
) -> Result<(), ExperimentError> {
    fs::create_dir_all(out).map_err(io_err(out))?;

    let manifest_path = out.join("manifest.txt");
    fs::write(&manifest_path, manifest_text(cfg, param, values)).map_err(io_err(&manifest_path))?;

    for result in results {
        let path = out.join(format!("run_{}.csv", result.run_id));
        let mut buf = Vec::new();
        write_records_csv(&mut buf, &result.summary.records).map_err(io_err(&path))?;
        fs::write(&path, buf).map_err(io_err(&path))?;
    }

    let rows: Vec<SummaryRow> = results
        .iter()
        .map(|r| SummaryRow {
            run_id: r.run_id.clone(),
            seed: r.seed,
            preset: cfg.preset.name().to_string(),
            param: r.param_label.clone(),
            success_rate: r.summary.success_rate,
            median_reaction: r.summary.median_reaction(),
            final_population: r.summary.final_population(),
        })
        .collect();
    let summary_path = out.join("summary.csv");
    let mut buf = Vec::new();
    write_summary_csv(&mut buf, &rows).map_err(io_err(&summary_path))?;
    fs::write(&summary_path, buf).map_err(io_err(&summary_path))?;
    Ok(())
}

/// The manifest doubles as a loadable config file: resolved settings as live
/// `key = value` lines, provenance (version, wall-clock, per-repeat seeds) as
/// comments. Floats use the shortest round-tripping form so a rerun from the
/// manifest reproduces the run bit for bit.
fn manifest_text(cfg: &ExperimentConfig, param: SweepParam, values: &[f64]) -> String {
    let mut s = String::new();
    s.push_str("# srs run manifest\n");
    s.push_str(&format!("# version = {}\n", env!("CARGO_PKG_VERSION")));
    let created = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    s.push_str(&format!("# created_unix = {created}\n"));
    s.push_str(&format!("# sweep_param = {}\n", param.name()));
    let value_list: Vec<String> = values.iter().map(|&v| format_value(v)).collect();
    s.push_str(&format!("# sweep_values = {}\n", value_list.join(",")));
    for r in 0..cfg.repeats {
        s.push_str(&format!("# seed_r{r} = {}\n", derive_seed(cfg.seed, r)));
    }
    s.push_str(&format!("preset = {}\n", cfg.preset.name()));
    s.push_str(&format!("width = {}\n", cfg.width));
    s.push_str(&format!("height = {}\n", cfg.height));
    s.push_str(&format!("t_max = {}\n", cfg.t_max));
    s.push_str(&format!("v = {}\n", cfg.speed));
    s.push_str(&format!("s = {}\n", cfg.severity));
    s.push_str(&format!("uf = {}\n", cfg.update_freq));
    s.push_str(&format!("ode_steps = {}\n", cfg.ode_steps));
    s.push_str(&format!("seed = {}\n", cfg.seed));
    s.push_str(&format!("repeats = {}\n", cfg.repeats));
    s.push_str(&format!("jobs = {}\n", cfg.jobs));
    s.push_str(&format!("eps = {}\n", cfg.eps));
    s.push_str(&format!("beta = {}\n", cfg.params.beta));
    s.push_str(&format!("gamma = {}\n", cfg.params.gamma));
    s.push_str(&format!("eta = {}\n", cfg.params.eta));
    s.push_str(&format!("evaporation = {}\n", cfg.params.evaporation));
    s.push_str(&format!(
        "deposition_gain = {}\n",
        cfg.params.deposition_gain
    ));
    s.push_str(&format!("delta_e = {}\n", cfg.params.delta_e));
    s.push_str(&format!(
        "initial_density = {}\n",
        cfg.params.initial_density
    ));
    s.push_str(&format!("survival_mode = {}\n", cfg.params.survival_mode));
    s.push_str(&format!(
        "reset_extremes_on_change = {}\n",
        cfg.params.reset_extremes_on_change
    ));
    s.push_str(&format!(
        "children_age_immediately = {}\n",
        cfg.params.children_age_immediately
    ));
    s.push_str(&format!(
        "snapshots = {}\n",
        cfg.snapshot_every.unwrap_or(0)
    ));
    if let Some(out) = &cfg.out_dir {
        s.push_str(&format!("out = {}\n", out.display()));
    }
    s
}
