//! `qbm`: CSV grids of quantum Brownian motion quantities.
//!
//! Exit status 0 on success, 2 for an invalid configuration, 1 for a
//! numerical failure.

mod args;
mod commands;
mod figure;
mod mc;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::args::ConfigError;
use crate::table::{destination, emit, Table};

#[derive(Parser)]
#[command(name = "qbm", version, about = "Quantum Brownian motion: grids and figure data as CSV")]
struct Cli {
    /// Output file; stdout when neither this nor the output directory is set.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Directory for `<subcommand>.csv` when --output is absent.
    #[arg(long, global = true, env = "QBM_OUTPUT_DIR")]
    output_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Green function G and its first two derivatives.
    Green(commands::CurveArgs),
    /// Mean square displacement s and its first two derivatives.
    Msd(commands::CurveArgs),
    /// Symmetrized position correlation c and its derivatives.
    Correlation(commands::CurveArgs),
    /// Equilibrium ⟨x²⟩ and ⟨ẋ²⟩.
    Moments(commands::MomentArgs),
    /// Characteristic function of a chain of Gaussian measurements along a ray.
    ChainCf(commands::ChainArgs),
    /// Joint distribution of one or two measurements.
    Jointdist(commands::JointArgs),
    /// Position distribution after a Gaussian-slit preparation.
    Pdist(commands::PdistArgs),
    /// Position distribution of a two-slit cat state.
    Cat(commands::CatArgs),
    /// Wigner function of a prepared state on a phase-space grid.
    Wigner(commands::WignerArgs),
    /// Data behind figure 1 to 6.
    Figure(figure::FigureArgs),
    /// Compare sampled classical trajectories with the exact covariance.
    McValidate(mc::McArgs),
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Green(_) => "green".into(),
            Command::Msd(_) => "msd".into(),
            Command::Correlation(_) => "correlation".into(),
            Command::Moments(_) => "moments".into(),
            Command::ChainCf(_) => "chain-cf".into(),
            Command::Jointdist(_) => "jointdist".into(),
            Command::Pdist(_) => "pdist".into(),
            Command::Cat(_) => "cat".into(),
            Command::Wigner(a) => format!("wigner-{}", serde_json::to_value(a.state).unwrap().as_str().unwrap_or("state")),
            Command::Figure(a) => format!("figure{}", a.n),
            Command::McValidate(_) => "mc-validate".into(),
        }
    }
}

fn table(command: &Command) -> anyhow::Result<(Table, Option<String>)> {
    let t = match command {
        Command::Green(a) => commands::green(a)?,
        Command::Msd(a) => commands::msd(a)?,
        Command::Correlation(a) => commands::correlation(a)?,
        Command::Moments(a) => commands::moments(a)?,
        Command::ChainCf(a) => commands::chain_cf(a)?,
        Command::Jointdist(a) => commands::jointdist(a)?,
        Command::Pdist(a) => commands::pdist(a)?,
        Command::Cat(a) => commands::cat(a)?,
        Command::Wigner(a) => commands::wigner(a)?,
        Command::Figure(a) => figure::figure(a)?,
        Command::McValidate(a) => {
            let (t, outside) = mc::mc_validate(a)?;
            let failure = (outside > 0).then(|| format!("{outside} lag(s) outside the {}σ band", a.band));
            return Ok((t, failure));
        }
    };
    Ok((t, None))
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<ConfigError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<qbm_core::Error>() {
        Some(e) if e.is_invalid_input() => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let path = destination(cli.output.as_deref(), cli.output_dir.as_deref(), &name);
    let result = table(&cli.command).and_then(|(t, failure)| {
        emit(&t, path.as_deref())?;
        match failure {
            Some(msg) => Err(anyhow::anyhow!(msg)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("qbm {name}: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
