use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tomoportrait::bell::PortraitSettings;
use tomoportrait::ppt::CutSpec;
use tomoportrait::states::DensityMatrix;
use tomoportrait::Direction;
use tomoportrait_cli::commands::{self, Objective, DEFAULT_RESTARTS, DEFAULT_SEED};
use tomoportrait_cli::setup::{parse_direction_list, SetupFile, StateSpec};
use tomoportrait_cli::{CliError, SEED_ENV};

/// Tomographic probabilities, qubit portraits and separability tests for multi-qubit states.
#[derive(Parser)]
#[command(name = "tomoportrait", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named state as a density matrix document.
    State {
        /// smolin, smolin-mixture, bell:Φ+|Φ−|Ψ+|Ψ−, mixed:<n>
        name: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Joint spin-projection probabilities for one direction per qubit.
    Tomogram {
        #[command(flatten)]
        common: Common,
        /// Directions, one per qubit, e.g. "z;x;0.6,0,0.8;-y" (default: all z).
        #[arg(long)]
        dirs: Option<String>,
        /// Report a single outcome such as "+-+-".
        #[arg(long)]
        outcome: Option<String>,
    },
    /// Portrait Bell number across A:BCD, closed form and dense pipeline.
    Bell {
        #[command(flatten)]
        common: Common,
        /// Built-in settings instead of the setup file's directions.
        #[arg(long)]
        preset: Option<Preset>,
    },
    /// Seeded multi-start search for the largest portrait Bell number.
    BellMaximize {
        #[command(flatten)]
        common: Common,
        /// Starting settings for the first restart.
        #[arg(long)]
        preset: Option<Preset>,
        /// Objective to maximize (default: closed form for the Smolin state, dense otherwise).
        #[arg(long)]
        objective: Option<ObjectiveArg>,
    },
    /// Minimum eigenvalue of the partial transpose across a cut.
    Ppt {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// JSON setup file; flags override its fields.
    #[arg(long)]
    setup: Option<PathBuf>,
    /// State name (overrides the setup file).
    #[arg(long)]
    state: Option<String>,
    /// Search seed (falls back to the setup file, then TOMOPORTRAIT_SEED, then 1).
    #[arg(long)]
    seed: Option<u64>,
    /// Number of search restarts.
    #[arg(long)]
    restarts: Option<usize>,
    /// Bipartition such as "A:BCD" or "AB:CD".
    #[arg(long)]
    cut: Option<String>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// a = (x+y)/√2, d = (x−y)/√2, b = x on B, C, D, c = y on B, C, D.
    Violating,
    /// Same with a and d exchanged; the Bell number vanishes.
    Swapped,
    /// Every direction along z.
    AllZ,
}

impl Preset {
    fn settings(self) -> PortraitSettings {
        match self {
            Preset::Violating => PortraitSettings::violating(),
            Preset::Swapped => PortraitSettings::side_a_swapped(),
            Preset::AllZ => PortraitSettings::uniform(Direction::Z),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Closed,
    Dense,
}

struct Resolved {
    setup: SetupFile,
    state_label: String,
    rho: DensityMatrix,
    seed: u64,
}

fn resolve(common: &Common, name: Option<&str>, default_state: &str) -> Result<Resolved, CliError> {
    let setup = match &common.setup {
        Some(path) => SetupFile::load(path)?,
        None => SetupFile::default(),
    };
    let spec = match name.or(common.state.as_deref()) {
        Some(n) => StateSpec::Name(n.to_owned()),
        None => setup.state.clone().unwrap_or_else(|| StateSpec::Name(default_state.to_owned())),
    };
    let rho = spec.build()?;
    let seed = match common.seed.or(setup.seed) {
        Some(s) => s,
        None => match std::env::var(SEED_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| CliError::input(format!("{SEED_ENV}={v:?} is not a u64")))?,
            Err(_) => DEFAULT_SEED,
        },
    };
    Ok(Resolved { setup, state_label: spec.label(), rho, seed })
}

fn settings(preset: Option<Preset>, setup: &SetupFile) -> Result<Option<PortraitSettings>, CliError> {
    match preset {
        Some(p) => Ok(Some(p.settings())),
        None => setup.portrait_settings(),
    }
}

fn run(cli: Cli) -> Result<(String, Option<PathBuf>), CliError> {
    match cli.command {
        Command::State { name, common } => {
            let r = resolve(&common, name.as_deref(), "smolin")?;
            Ok((commands::cmd_state(&r.rho, &r.state_label), common.out))
        }
        Command::Tomogram { common, dirs, outcome } => {
            let r = resolve(&common, None, "smolin")?;
            let dirs = match dirs {
                Some(text) => parse_direction_list(&text)?,
                None => r.setup.tomogram_directions()?.unwrap_or_else(|| vec![Direction::Z; r.rho.n_qubits()]),
            };
            let outcome = outcome.or(r.setup.outcome.clone());
            let text = commands::cmd_tomogram(&r.rho, &r.state_label, &dirs, outcome.as_deref(), r.seed)?;
            Ok((text, common.out))
        }
        Command::Bell { common, preset } => {
            let r = resolve(&common, None, "smolin")?;
            let s = settings(preset, &r.setup)?
                .ok_or_else(|| CliError::input("bell needs all 8 directions: give --preset or a setup file with \"directions\""))?;
            Ok((commands::cmd_bell(&r.rho, &r.state_label, &s, r.seed)?, common.out))
        }
        Command::BellMaximize { common, preset, objective } => {
            let r = resolve(&common, None, "smolin")?;
            let start = settings(preset, &r.setup)?;
            let restarts = common.restarts.or(r.setup.restarts).unwrap_or(DEFAULT_RESTARTS);
            let objective = match objective {
                Some(ObjectiveArg::Closed) => Objective::Closed,
                Some(ObjectiveArg::Dense) => Objective::Dense,
                None if commands::is_smolin(&r.rho) => Objective::Closed,
                None => Objective::Dense,
            };
            let text = commands::cmd_bell_maximize(&r.rho, &r.state_label, objective, start, restarts, r.seed)?;
            Ok((text, common.out))
        }
        Command::Ppt { common } => {
            let r = resolve(&common, None, "smolin")?;
            let cut = match common.cut.as_deref().or(r.setup.cut.as_deref()) {
                Some(text) => CutSpec::parse(text)?,
                None => commands::default_cut(r.rho.n_qubits())?,
            };
            Ok((commands::cmd_ppt(&r.rho, &r.state_label, &cut, r.seed)?, common.out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(cli).and_then(|(text, out)| match out {
        Some(path) => std::fs::write(&path, &text).map_err(|source| CliError::Io { path, source }),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
