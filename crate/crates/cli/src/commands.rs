use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spinsq_core::dynamics::SqueezeConvention;
use spinsq_core::sweep::run_sweep;

use crate::angle::{parse_angle, Angle};
use crate::config::{parse_hamiltonian_flag, Grid, HamiltonianConfig, SweepConfig, TwoJ};
use crate::error::{CliError, Result};
use crate::presets::{self, Fig2Options};
use crate::selfcheck::{run_selfcheck, SelfCheckOptions};
use crate::table::Format;

#[derive(Debug, Parser)]
#[command(
    name = "spinsq",
    version,
    about = "Spin squeezing of collective atomic states"
)]
pub struct Cli {
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Two atoms at θ = 0: S against η with the closed-form pair.
    Fig1,
    /// Squeezing against j at fixed η.
    Fig2(Fig2Args),
    /// Squeezing oscillations against η for a few j.
    Fig3(Fig3Args),
    /// Run a sweep from a JSON config and/or flags.
    Sweep(SweepArgs),
    /// Closed-form two-atom variances next to the numerical ones.
    TwoAtom(TwoAtomArgs),
    /// Run the oracle suites.
    Selfcheck(SelfCheckArgs),
}

#[derive(Debug, Args)]
pub struct Fig2Args {
    #[arg(long, value_parser = parse_angle, default_value = "pi/20")]
    pub eta: f64,
    #[arg(long, default_value_t = presets::FIG2_DEFAULT_J_MAX)]
    pub j_max: u32,
    #[arg(long, value_parser = parse_angle, default_value = "pi/2")]
    pub theta: f64,
    #[arg(long, value_parser = parse_angle, default_value = "0")]
    pub phi: f64,
}

#[derive(Debug, Args)]
pub struct Fig3Args {
    /// Values of j (multiples of 1/2).
    #[arg(long, value_delimiter = ',', default_values_t = [4.0, 15.0])]
    pub j_list: Vec<f64>,
    /// Cover η ∈ [0, π) instead of [0, π/2).
    #[arg(long)]
    pub extended: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// JSON config; flags below override its fields.
    pub config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub two_j: Option<Vec<u32>>,
    #[arg(long, value_parser = parse_angle)]
    pub theta: Option<f64>,
    #[arg(long, value_parser = parse_angle)]
    pub phi: Option<f64>,
    /// Comma-separated η values.
    #[arg(long, value_delimiter = ',', value_parser = parse_angle, conflicts_with = "hamiltonian")]
    pub eta: Option<Vec<f64>>,
    /// two-axis:ZETA | one-axis:GAMMA | lipkin:G1,G2 | lambda:EPS
    #[arg(long, requires = "times")]
    pub hamiltonian: Option<String>,
    /// Comma-separated evolution times for --hamiltonian.
    #[arg(long = "t", value_delimiter = ',', value_parser = parse_angle)]
    pub times: Option<Vec<f64>>,
    /// Write the fully resolved config here.
    #[arg(long)]
    pub emit_config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TwoAtomArgs {
    #[arg(long, value_delimiter = ',')]
    pub xi: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', value_parser = parse_angle)]
    pub eta: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    #[default]
    Ladder,
    Naive,
}

impl From<ConventionArg> for SqueezeConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Ladder => SqueezeConvention::Ladder,
            ConventionArg::Naive => SqueezeConvention::Naive,
        }
    }
}

#[derive(Debug, Args)]
pub struct SelfCheckArgs {
    #[arg(long, value_enum, default_value_t = ConventionArg::Ladder)]
    pub convention: ConventionArg,
    #[arg(long, default_value_t = 25)]
    pub max_j: u32,
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path.display().to_string(), e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io("stdout", e))
        }
    }
}

/// Merges the config file (if any) with command-line overrides.
pub fn sweep_config(args: &SweepArgs, workers: Option<usize>) -> Result<SweepConfig> {
    let mut config = match &args.config {
        Some(path) => SweepConfig::load(&path.display().to_string())?,
        None => SweepConfig::default(),
    };
    if let Some(list) = &args.two_j {
        config.two_j = Some(TwoJ::Many(list.clone()));
        config.j_range = None;
    }
    if let Some(theta) = args.theta {
        config.theta = Angle(theta);
    }
    if let Some(phi) = args.phi {
        config.phi = Angle(phi);
    }
    if let Some(etas) = &args.eta {
        config.eta_grid = Some(Grid::from_values(etas.clone()));
        config.hamiltonian = None;
    }
    if let Some(h) = &args.hamiltonian {
        let spec = parse_hamiltonian_flag(h)?;
        let times = args.times.clone().unwrap_or_default();
        config.hamiltonian = Some(HamiltonianConfig::new(&spec, times));
        config.eta_grid = None;
    } else if let (Some(times), Some(h)) = (&args.times, config.hamiltonian.as_mut()) {
        h.t_grid = Grid::from_values(times.clone());
    }
    if workers.is_some() {
        config.workers = workers;
    }
    Ok(config)
}

pub fn run(cli: Cli) -> Result<()> {
    let workers = cli.workers;
    if workers == Some(0) {
        return Err(CliError::config("--workers", "must be positive"));
    }
    let format = cli.format.unwrap_or_default();
    let out = cli.out.as_ref();
    match &cli.command {
        Command::Fig1 => emit(out, &presets::fig1(workers)?.render(format)),
        Command::Fig2(a) => {
            let options = Fig2Options {
                eta: a.eta,
                j_max: a.j_max,
                theta: a.theta,
                phi: a.phi,
            };
            if options.j_max == 0 {
                return Err(CliError::config("--j-max", "must be at least 1"));
            }
            emit(out, &presets::fig2(options, workers)?.render(format))
        }
        Command::Fig3(a) => {
            let two_j = a
                .j_list
                .iter()
                .map(|&j| {
                    let t = 2.0 * j;
                    if t >= 1.0 && (t - t.round()).abs() < 1e-9 {
                        Ok(t.round() as u32)
                    } else {
                        Err(CliError::config(
                            "--j-list",
                            format!("{j} is not a positive multiple of 1/2"),
                        ))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            emit(out, &presets::fig3(&two_j, a.extended, workers)?.render(format))
        }
        Command::Sweep(a) => {
            let config = sweep_config(a, workers)?;
            let spec = config.to_spec()?;
            if let Some(path) = &a.emit_config {
                let text = config.effective()?.to_json();
                std::fs::write(path, text).map_err(|e| CliError::io(path.display().to_string(), e))?;
            }
            let rows = run_sweep(&spec)?;
            let param = match spec.evolution {
                spinsq_core::sweep::Evolution::Squeeze { .. } => "eta",
                spinsq_core::sweep::Evolution::Hamiltonian { .. } => "t",
            };
            let format = cli.format.unwrap_or(config.output.format);
            let path = cli
                .out
                .clone()
                .or_else(|| config.output.path.as_ref().map(PathBuf::from));
            emit(path.as_ref(), &presets::sweep_table(&rows, param).render(format))?;
            if presets::all_degenerate(&rows) {
                return Err(CliError::AllRowsDegenerate);
            }
            Ok(())
        }
        Command::TwoAtom(a) => {
            let xis = a.xi.clone().unwrap_or_else(presets::two_atom_xi_grid);
            let etas = a.eta.clone().unwrap_or_else(presets::two_atom_eta_grid);
            emit(out, &presets::two_atom(&xis, &etas)?.render(format))
        }
        Command::Selfcheck(a) => {
            let outcomes = run_selfcheck(SelfCheckOptions {
                convention: a.convention.into(),
                max_j: a.max_j,
            });
            let text = match format {
                Format::Csv => outcomes.iter().map(|o| format!("{o}\n")).collect::<String>(),
                Format::Json => {
                    let items: Vec<_> = outcomes
                        .iter()
                        .map(|o| {
                            serde_json::json!({
                                "suite": o.name,
                                "passed": o.passed,
                                "max_deviation": o.max_deviation,
                                "tolerance": o.tolerance,
                                "detail": o.detail,
                            })
                        })
                        .collect();
                    format!("{}\n", serde_json::to_string_pretty(&items)?)
                }
            };
            emit(out, &text)?;
            let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::SelfCheckFailed(failed.join(", ")))
            }
        }
    }
}
