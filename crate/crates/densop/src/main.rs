//! Thin command-line front end over the scenario runner.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use densop::scenario::{
    bell_scenario_from_flags, plain_scenario, run_scenario, run_scenario_file, Kind, Overrides,
    RunError,
};

#[derive(Parser)]
#[command(
    name = "densop",
    version,
    about = "Density-operator quantum mechanics scenario runner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Override the scenario seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override the scenario trial count.
    #[arg(long, global = true)]
    trials: Option<u64>,

    /// Report classification threshold. Engine tolerances are fixed at
    /// compile time and unaffected.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Directory for artifacts whose output_path is relative.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a time evolution scenario; emits a CSV trajectory.
    Evolve {
        /// Scenario JSON file of kind "evolve".
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Sample measurement outcomes of an observable; emits a CSV table.
    Measure {
        /// Scenario JSON file of kind "measure".
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Bell-inequality audit over three coplanar angles; emits CSV.
    Bell {
        /// Scenario JSON file of kind "bell".
        #[arg(long, conflicts_with_all = ["angles", "strategy"])]
        scenario: Option<PathBuf>,
        /// Three coplanar angles in degrees, e.g. --angles 0,60,120.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        angles: Option<Vec<f64>>,
        /// qm, sign-lhv or table.
        #[arg(long, default_value = "qm")]
        strategy: String,
    },
    /// Statement-F falsification report for the singlet; emits JSON.
    Epr {
        /// Scenario JSON file of kind "epr".
        #[arg(long)]
        scenario: Option<PathBuf>,
    },
    /// Information-content report for a bipartite state; emits JSON.
    Info {
        /// Scenario JSON file of kind "info".
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Atom-plus-pointer demonstration; emits JSON.
    Cat {
        /// Scenario JSON file of kind "cat".
        #[arg(long)]
        scenario: Option<PathBuf>,
    },
}

fn dispatch(cli: Cli) -> Result<PathBuf, RunError> {
    let overrides = Overrides {
        seed: cli.seed,
        trials: cli.trials,
        tol: cli.tol,
        out_dir: cli.out,
    };
    let seed = cli.seed.unwrap_or(0);

    match cli.command {
        Command::Evolve { scenario } => {
            run_scenario_file(&scenario, Some(Kind::Evolve), &overrides)
        }
        Command::Measure { scenario } => {
            run_scenario_file(&scenario, Some(Kind::Measure), &overrides)
        }
        Command::Bell {
            scenario: Some(path),
            ..
        } => run_scenario_file(&path, Some(Kind::Bell), &overrides),
        Command::Bell {
            scenario: None,
            angles,
            strategy,
        } => {
            let angles = angles.unwrap_or_else(|| vec![0.0, 60.0, 120.0]);
            let scenario =
                bell_scenario_from_flags(angles, &strategy, PathBuf::from("bell.csv"), seed)?;
            run_scenario(scenario, &overrides)
        }
        Command::Epr { scenario: Some(path) } => {
            run_scenario_file(&path, Some(Kind::Epr), &overrides)
        }
        Command::Epr { scenario: None } => run_scenario(
            plain_scenario(Kind::Epr, PathBuf::from("epr_report.json"), seed),
            &overrides,
        ),
        Command::Info { scenario } => run_scenario_file(&scenario, Some(Kind::Info), &overrides),
        Command::Cat { scenario: Some(path) } => {
            run_scenario_file(&path, Some(Kind::Cat), &overrides)
        }
        Command::Cat { scenario: None } => run_scenario(
            plain_scenario(Kind::Cat, PathBuf::from("cat_report.json"), seed),
            &overrides,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(path) => {
            println!("wrote {}", path.display());
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("densop: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
