//! Command-line front end: run one experiment, dump the claims table, or
//! list what exists. All simulation lives in the library; this binary only
//! parses flags, layers them over the config, and writes the CSV.
//!
//! Exit codes: 0 success, 1 invalid configuration, 2 I/O failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use matchmarket::experiments::{self, Experiment, ExperimentConfig};
use matchmarket::Error;

#[derive(Parser)]
#[command(
    name = "matchmarket",
    version,
    about = "Buyer-vendor toy market simulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)] // parsed once; size is irrelevant
enum Command {
    /// Run one experiment sweep and write its CSV table.
    Run {
        /// Experiment id; see `matchmarket list`.
        experiment: String,
        /// Flat key = value config file applied before the flags.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Compute the scalar claims table at N = 1000.
    Claims {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        realizations: Option<u64>,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the experiments and the figure data each one produces.
    List,
}

#[derive(Args)]
struct Overrides {
    /// Variant count(s), comma-separated for a sweep.
    #[arg(long)]
    n: Option<String>,
    /// Buyer count(s), comma-separated for a sweep.
    #[arg(long)]
    m: Option<String>,
    /// k-norm exponent(s), comma-separated for a sweep.
    #[arg(long)]
    k: Option<String>,
    /// Correlation strength(s) in [0, 1].
    #[arg(long)]
    t: Option<String>,
    /// Correlation sign, +1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// Search cost per examined variant.
    #[arg(long)]
    beta: Option<String>,
    /// Power-law exponent (> 2).
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    realizations: Option<String>,
    /// Master seed; everything in the output is a pure function of it.
    #[arg(long)]
    seed: Option<String>,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Search-cost exponent (1 = linear, the validated default).
    #[arg(long)]
    cost_exponent: Option<String>,
}

impl Overrides {
    fn apply(&self, cfg: &mut ExperimentConfig) -> Result<(), Error> {
        let pairs: [(&str, &Option<String>); 10] = [
            ("n", &self.n),
            ("m", &self.m),
            ("k", &self.k),
            ("t", &self.t),
            ("s", &self.s),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("realizations", &self.realizations),
            ("seed", &self.seed),
            ("cost_exponent", &self.cost_exponent),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        if let Some(out) = &self.out {
            cfg.output_path = Some(out.clone());
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Io { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run {
            experiment,
            config,
            overrides,
        } => {
            let experiment = Experiment::parse(&experiment)?;
            let mut cfg = match config {
                Some(path) => {
                    let file_cfg = ExperimentConfig::from_file(&path)?;
                    if file_cfg.experiment != experiment {
                        return Err(Error::Config(format!(
                            "config file is for {}, command line asked for {}",
                            file_cfg.experiment.id(),
                            experiment.id()
                        )));
                    }
                    file_cfg
                }
                None => ExperimentConfig::defaults_for(experiment),
            };
            overrides.apply(&mut cfg)?;
            cfg.validate()?;
            eprintln!(
                "running {} ({} realizations, seed {})...",
                cfg.experiment.id(),
                cfg.realizations,
                cfg.master_seed
            );
            let table = experiments::run_experiment(&cfg)?;
            emit(&table, cfg.output_path.as_deref())
        }
        Command::Claims {
            seed,
            realizations,
            out,
        } => {
            let mut cfg = ExperimentConfig::defaults_for(Experiment::ClaimsTable);
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            if let Some(r) = realizations {
                cfg.realizations = r;
            }
            cfg.output_path = out;
            cfg.validate()?;
            eprintln!(
                "computing claims table ({} realizations, seed {})...",
                cfg.realizations, cfg.master_seed
            );
            let table = experiments::claims_report(&cfg)?;
            emit(&table, cfg.output_path.as_deref())
        }
        Command::List => {
            for e in Experiment::all() {
                println!("{:<22} {}", e.id(), e.describe());
            }
            Ok(())
        }
    }
}

fn emit(table: &experiments::ResultTable, out: Option<&std::path::Path>) -> Result<(), Error> {
    match out {
        Some(path) => {
            table.write_csv(path)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{}", table.to_csv_string());
            Ok(())
        }
    }
}
