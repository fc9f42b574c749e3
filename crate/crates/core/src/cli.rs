//! Command-line front end.
//!
//! Every command resolves a [`RunConfig`] from an optional JSON config file
//! plus flag overrides, writes its data file to `output`, and writes the
//! resolved config next to it as `<output>.meta.json`.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::econ::{self, CostParams, DEFAULT_DT_COST, DEFAULT_FD_STEP};
use crate::error::{Compartment, Error};
use crate::model::{self, EpiParams, Scenario};
use crate::output;
use crate::sweep::{self, GridSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

pub const THREADS_ENV: &str = "DISTGAME_THREADS";

pub const DEFAULT_C_D: f64 = 1.0;
/// Median direct medical cost of a symptomatic infection, US$.
pub const DEFAULT_C_I: f64 = 3045.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Fully resolved inputs of one command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub r0: f64,
    pub gamma_inv: f64,
    pub n: f64,
    pub i0_fraction: f64,
    pub delta: f64,
    pub t0: f64,
    pub tf: f64,
    pub dt_internal: f64,
    pub dt_output: f64,
    pub c_d: f64,
    pub c_i: f64,
    pub dt_cost: f64,
    pub h: f64,
    pub quantity: Compartment,
    pub r0_values: Vec<f64>,
    pub gamma_inv_values: Vec<f64>,
    pub delta_values: Vec<f64>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            r0: model::DEFAULT_R0,
            gamma_inv: model::DEFAULT_GAMMA_INV,
            n: model::DEFAULT_N,
            i0_fraction: model::DEFAULT_I0_FRACTION,
            delta: 0.0,
            t0: 0.0,
            tf: model::DEFAULT_TF,
            dt_internal: model::DEFAULT_DT_INTERNAL,
            dt_output: model::DEFAULT_DT_OUTPUT,
            c_d: DEFAULT_C_D,
            c_i: DEFAULT_C_I,
            dt_cost: DEFAULT_DT_COST,
            h: DEFAULT_FD_STEP,
            quantity: Compartment::I,
            r0_values: sweep::DEFAULT_R0_VALUES.to_vec(),
            gamma_inv_values: sweep::DEFAULT_GAMMA_INV_VALUES.to_vec(),
            delta_values: sweep::default_delta_values(),
            output: None,
            format: Format::Csv,
        }
    }
}

/// A configuration problem, naming the offending key where there is one.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

fn bad_key(key: &str, msg: impl std::fmt::Display) -> ConfigError {
    ConfigError(format!("invalid value for `{key}`: {msg}"))
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError(format!("config: {e}")))
    }

    pub fn scenario(&self) -> Result<Scenario, ConfigError> {
        let params = EpiParams::from_infectious_period(self.r0, self.gamma_inv, self.n).map_err(|e| {
            let key = if !(self.gamma_inv > 0.0) {
                "gamma_inv"
            } else if !(self.n > 0.0) {
                "n"
            } else {
                "r0"
            };
            bad_key(key, e)
        })?;
        let s = Scenario {
            params,
            i0_fraction: self.i0_fraction,
            delta: self.delta,
            t0: self.t0,
            tf: self.tf,
            dt_internal: self.dt_internal,
            dt_output: self.dt_output,
        };
        if !(0.0..=1.0).contains(&s.delta) {
            return Err(bad_key("delta", "must lie in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&s.i0_fraction) {
            return Err(bad_key("i0_fraction", "must lie in [0, 1]"));
        }
        if !(s.t0.is_finite() && s.tf.is_finite() && s.t0 < s.tf) {
            return Err(bad_key("tf", "must be finite and greater than t0"));
        }
        if !(s.dt_internal > 0.0 && s.dt_internal <= s.dt_output) {
            return Err(bad_key("dt_internal", "must satisfy 0 < dt_internal <= dt_output"));
        }
        s.validate().map_err(|e| bad_key("dt_output", e))?;
        Ok(s)
    }

    pub fn costs(&self) -> Result<CostParams, ConfigError> {
        if !(self.c_d >= 0.0 && self.c_d.is_finite()) {
            return Err(bad_key("c_d", "must be finite and >= 0"));
        }
        if !(self.c_i >= 0.0 && self.c_i.is_finite()) {
            return Err(bad_key("c_i", "must be finite and >= 0"));
        }
        Ok(CostParams { c_d: self.c_d, c_i: self.c_i })
    }

    pub fn grid(&self) -> Result<GridSpec, ConfigError> {
        let g = GridSpec {
            r0_values: self.r0_values.clone(),
            gamma_inv_values: self.gamma_inv_values.clone(),
            delta_values: self.delta_values.clone(),
            base: self.scenario()?,
        };
        for (key, values) in [
            ("r0_values", &g.r0_values),
            ("gamma_inv_values", &g.gamma_inv_values),
            ("delta_values", &g.delta_values),
        ] {
            if values.is_empty() || values.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(bad_key(key, "must be non-empty and strictly increasing"));
            }
        }
        g.validate().map_err(|e| ConfigError(e.to_string()))?;
        Ok(g)
    }

    fn fd_step(&self) -> Result<f64, ConfigError> {
        if !(self.h > 0.0 && self.h <= econ::MAX_FD_STEP) {
            return Err(bad_key("h", format!("must lie in (0, {}]", econ::MAX_FD_STEP)));
        }
        Ok(self.h)
    }
}

#[derive(Debug, Parser)]
#[command(name = "distgame", version, about = "SIR social-distancing game: simulations, sweeps and cost fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Integrate one scenario and write its trajectory.
    #[command(allow_negative_numbers = true)]
    Simulate,
    /// Undistanced trajectories over the (r0, gamma_inv) grid.
    #[command(allow_negative_numbers = true)]
    SweepGrid,
    /// S, I or R over the (delta, t) grid.
    #[command(allow_negative_numbers = true)]
    Field,
    /// Marginal utility dI/d(delta) over the (delta, t) grid.
    #[command(allow_negative_numbers = true)]
    UtilityField,
    /// Cost fraction c_d / c_i over the (delta, t) grid.
    #[command(allow_negative_numbers = true)]
    CostField,
    /// Per-sample risk, step costs and preferred strategy.
    #[command(allow_negative_numbers = true)]
    Strategy,
    /// Total social cost of one scenario.
    #[command(allow_negative_numbers = true)]
    TotalCost,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::SweepGrid => "sweep-grid",
            Command::Field => "field",
            Command::UtilityField => "utility-field",
            Command::CostField => "cost-field",
            Command::Strategy => "strategy",
            Command::TotalCost => "total-cost",
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// JSON config file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub r0: Option<f64>,
    #[arg(long, global = true)]
    pub gamma_inv: Option<f64>,
    #[arg(long, global = true)]
    pub n: Option<f64>,
    #[arg(long = "i0", global = true)]
    pub i0_fraction: Option<f64>,
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    #[arg(long, global = true)]
    pub t0: Option<f64>,
    #[arg(long, global = true)]
    pub tf: Option<f64>,
    #[arg(long, global = true)]
    pub dt_internal: Option<f64>,
    #[arg(long, global = true)]
    pub dt_output: Option<f64>,
    #[arg(long, global = true)]
    pub c_d: Option<f64>,
    #[arg(long, global = true)]
    pub c_i: Option<f64>,
    #[arg(long, global = true)]
    pub dt_cost: Option<f64>,
    /// Finite-difference step in delta.
    #[arg(long, global = true)]
    pub h: Option<f64>,
    #[arg(long, global = true, value_parser = parse_compartment)]
    pub quantity: Option<Compartment>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub r0_values: Option<Vec<f64>>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub gamma_inv_values: Option<Vec<f64>>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub delta_values: Option<Vec<f64>>,
    #[arg(long = "out", global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

fn parse_compartment(s: &str) -> Result<Compartment, String> {
    match s {
        "S" | "s" => Ok(Compartment::S),
        "I" | "i" => Ok(Compartment::I),
        "R" | "r" => Ok(Compartment::R),
        _ => Err(format!("expected one of S, I, R; got `{s}`")),
    }
}

impl Overrides {
    pub fn apply(&self, cfg: &mut RunConfig) {
        macro_rules! set {
            ($($field:ident),*) => {$(
                if let Some(v) = &self.$field {
                    cfg.$field = v.clone();
                }
            )*};
        }
        set!(
            r0, gamma_inv, n, i0_fraction, delta, t0, tf, dt_internal, dt_output, c_d, c_i,
            dt_cost, h, quantity, r0_values, gamma_inv_values, delta_values, format
        );
        if let Some(p) = &self.output {
            cfg.output = Some(p.clone());
        }
    }

    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
                RunConfig::from_json(&text)?
            }
            None => RunConfig::default(),
        };
        self.apply(&mut cfg);
        Ok(cfg)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Model(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(e) if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_CONFIG,
        }
    }
}

/// Sweep thread cap from [`THREADS_ENV`]; `0` or unset means automatic.
pub fn threads_from_env() -> Result<usize, ConfigError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| ConfigError(format!("invalid value for `{THREADS_ENV}`: `{v}`"))),
        Err(_) => Ok(0),
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let cfg = cli.overrides.resolve()?;
    let threads = threads_from_env()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| ConfigError(format!("thread pool: {e}")))?;
    pool.install(|| run_resolved(cli.command, &cfg))
}

/// Runs a command from an already resolved config.
pub fn run_resolved(command: Command, cfg: &RunConfig) -> Result<(), CliError> {
    let out = cfg
        .output
        .clone()
        .ok_or_else(|| ConfigError("missing `output` (use --out or the config key)".into()))?;
    let started = SystemTime::now();
    let clock = Instant::now();
    let data = render(command, cfg)?;
    write_file(&out, &data)?;

    let meta = serde_json::json!({
        "tool": "distgame",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command.name(),
        "config": cfg,
        "started_unix_ms": started.duration_since(UNIX_EPOCH).map(|d| d.as_millis() as u64).unwrap_or(0),
        "elapsed_ms": clock.elapsed().as_secs_f64() * 1e3,
    });
    let meta = serde_json::to_vec_pretty(&meta).expect("metadata serializes");
    write_file(&metadata_path(&out), &meta)?;
    Ok(())
}

pub fn metadata_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".meta.json");
    out.with_file_name(name)
}

fn write_file(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut w = BufWriter::new(fs::File::create(path)?);
    w.write_all(bytes)?;
    w.flush()
}

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("result serializes");
    v.push(b'\n');
    v
}

/// The bytes of the data file for `command`.
pub fn render(command: Command, cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    match command {
        Command::Simulate => {
            let traj = crate::integrate(&cfg.scenario()?)?;
            match cfg.format {
                Format::Csv => output::write_trajectory_csv(&traj, &mut buf)?,
                Format::Json => buf = json(&traj),
            }
        }
        Command::SweepGrid => {
            let trajs = sweep::sweep_r0_gamma(&cfg.grid()?)?;
            match cfg.format {
                Format::Csv => output::write_grid_sweep_csv(&trajs, &mut buf)?,
                Format::Json => buf = json(&trajs),
            }
        }
        Command::Field | Command::UtilityField | Command::CostField => {
            let grid = cfg.grid()?;
            let field = match command {
                Command::Field => sweep::field_by_delta(&grid, cfg.quantity)?,
                Command::UtilityField => sweep::utility_field(&grid, cfg.fd_step()?)?,
                _ => sweep::cost_fraction_field(&grid)?,
            };
            match cfg.format {
                Format::Csv => output::write_field_csv(&field, &mut buf)?,
                // JSON has no infinity; Unbounded cells become null.
                Format::Json => buf = json(&field),
            }
        }
        Command::Strategy => {
            let traj = crate::integrate(&cfg.scenario()?)?;
            let rows = econ::strategy_report(&traj, &cfg.costs()?)?;
            match cfg.format {
                Format::Csv => output::write_strategy_csv(&rows, &mut buf)?,
                Format::Json => buf = json(&rows),
            }
        }
        Command::TotalCost => {
            let costs = cfg.costs()?;
            let traj = crate::integrate(&cfg.scenario()?)?;
            let total = econ::total_social_cost(&traj, &costs, cfg.dt_cost).map_err(|e| match e {
                Error::Alignment { .. } => CliError::Config(bad_key("dt_cost", e)),
                other => other.into(),
            })?;
            match cfg.format {
                Format::Csv => {
                    writeln!(buf, "delta,c_d,c_i,dt_cost,total_cost")?;
                    writeln!(
                        buf,
                        "{},{},{},{},{}",
                        output::fmt_num(cfg.delta),
                        output::fmt_num(costs.c_d),
                        output::fmt_num(costs.c_i),
                        output::fmt_num(cfg.dt_cost),
                        output::fmt_num(total)
                    )?;
                }
                Format::Json => {
                    buf = json(&serde_json::json!({
                        "delta": cfg.delta,
                        "c_d": costs.c_d,
                        "c_i": costs.c_i,
                        "dt_cost": cfg.dt_cost,
                        "total_cost": total,
                    }))
                }
            }
        }
    }
    Ok(buf)
}
