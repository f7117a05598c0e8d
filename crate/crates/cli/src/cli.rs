//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use eit_core::Case;

use crate::config::{Format, Quantity, RunConfig};
use crate::error::{CliError, Result};
use crate::output::Table;
use crate::reports::{run_semiclassical, run_transient, run_uncertainty, Report};
use crate::sweep::{failure_manifest, run_sweep, sweep_table};

#[derive(Debug, Parser)]
#[command(
    name = "eit",
    version,
    about = "Quantized-field EIT susceptibility and group-velocity statistics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Susceptibility and group-velocity statistics over the detuning grid.
    Sweep,
    /// Coherence dynamics of one Fock sector from the dark state.
    Transient(TransientArgs),
    /// Group-velocity / phase uncertainty relation over the detuning grid.
    Uncertainty,
    /// Lossless small-detuning susceptibility from mean photon numbers.
    Semiclassical,
}

#[derive(Debug, Clone, Default, Args)]
pub struct TransientArgs {
    #[arg(long)]
    pub n1: Option<u64>,
    #[arg(long)]
    pub n2: Option<u64>,
    /// Detuning of the sector, in units of gamma1.
    #[arg(long, allow_hyphen_values = true)]
    pub delta1: Option<f64>,
    /// Dark-state order of the initial condition (1 or 2).
    #[arg(long)]
    pub order: Option<u8>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub t_steps: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// TOML config file; `-` reads standard input.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_parser = parse_case)]
    pub case: Option<Case>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub delta_min: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub delta_max: Option<f64>,
    /// Number of grid points.
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    #[arg(long, global = true)]
    pub alpha2: Option<f64>,
    #[arg(long, global = true)]
    pub beta2: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha_phase: Option<f64>,
    #[arg(long, global = true)]
    pub gamma2: Option<f64>,
    #[arg(long, global = true)]
    pub gamma3: Option<f64>,
    #[arg(long, global = true)]
    pub gindex: Option<f64>,
    #[arg(long, global = true)]
    pub tail_eps: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output if omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses every available core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

fn parse_case(s: &str) -> std::result::Result<Case, String> {
    s.parse().map_err(|e: eit_core::EitError| e.to_string())
}

impl Common {
    /// Loads the config (or defaults) and applies command-line overrides.
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($flag:ident => $($field:ident).+),* $(,)?) => {
                $(if let Some(v) = self.$flag { cfg.$($field).+ = v; })*
            };
        }
        set!(
            case => case,
            delta_min => delta_min,
            delta_max => delta_max,
            steps => delta_steps,
            alpha2 => alpha2,
            beta2 => beta2,
            alpha_phase => alpha_phase,
            gamma2 => params.gamma2,
            gamma3 => params.gamma3,
            gindex => params.gindex,
            tail_eps => tail_eps,
        );
        cfg.validate()?;
        Ok(cfg)
    }
}

impl TransientArgs {
    fn apply(&self, cfg: &mut RunConfig) -> Result<()> {
        let t = &mut cfg.transient;
        if let Some(v) = self.n1 {
            t.n1 = v;
        }
        if let Some(v) = self.n2 {
            t.n2 = v;
        }
        if let Some(v) = self.delta1 {
            t.delta1 = v;
        }
        if let Some(v) = self.order {
            t.order = v;
        }
        if let Some(v) = self.t_max {
            t.t_max = v;
            t.t_grid = None;
        }
        if let Some(v) = self.t_steps {
            t.t_steps = v;
            t.t_grid = None;
        }
        cfg.validate()
    }
}

// Writes the configured outputs of `quantity`, plus the full table to
// `--out` (or stdout) when asked for or when nothing else was written.
fn emit(
    cfg: &RunConfig,
    common: &Common,
    quantity: Option<Quantity>,
    render: impl Fn(Option<Quantity>) -> Table,
) -> Result<()> {
    let configured: Vec<_> = cfg
        .outputs
        .iter()
        .filter(|o| match quantity {
            Some(q) if q.is_sweep() => o.quantity.is_sweep(),
            Some(q) => o.quantity == q,
            None => false,
        })
        .collect();
    for o in &configured {
        render(Some(o.quantity)).write(o.format, Some(&o.path))?;
    }
    if configured.is_empty() || common.out.is_some() {
        render(None).write(common.format.unwrap_or_default(), common.out.as_deref())?;
    }
    Ok(())
}

fn finish(failures: Vec<String>) -> Result<()> {
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::RowFailures(failures))
    }
}

fn emit_report(
    cfg: &RunConfig,
    common: &Common,
    quantity: Option<Quantity>,
    report: Report,
) -> Result<()> {
    emit(cfg, common, quantity, |_| report.table.clone())?;
    finish(report.failures)
}

pub fn run(cli: &Cli) -> Result<()> {
    let mut cfg = cli.common.resolve()?;
    match &cli.command {
        Command::Sweep => {
            let rows = run_sweep(&cfg, cli.common.jobs)?;
            emit(&cfg, &cli.common, Some(Quantity::ChiMean), |q| {
                sweep_table(&cfg, &rows, q)
            })?;
            finish(failure_manifest(&rows))
        }
        Command::Transient(args) => {
            args.apply(&mut cfg)?;
            let report = run_transient(&cfg)?;
            emit_report(&cfg, &cli.common, Some(Quantity::Transient), report)
        }
        Command::Uncertainty => {
            let report = run_uncertainty(&cfg, cli.common.jobs)?;
            emit_report(&cfg, &cli.common, Some(Quantity::Uncertainty), report)
        }
        Command::Semiclassical => {
            let report = run_semiclassical(&cfg)?;
            emit_report(&cfg, &cli.common, None, report)
        }
    }
}
