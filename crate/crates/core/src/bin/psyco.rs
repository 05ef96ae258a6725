use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use psyco::harness::{self, selftest::selftest, EnvKind, ExperimentConfig, Mode, Overrides};

#[derive(Parser)]
#[command(name = "psyco", version, about = "Safe policy synthesis with Bayesian verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train policies and write metrics, aggregate and snapshots.
    Train {
        #[command(flatten)]
        setup: Setup,
    },
    /// Verify a policy snapshot against a requirement.
    Verify {
        /// Policy snapshot file.
        #[arg(long)]
        policy: PathBuf,
        #[command(flatten)]
        setup: Setup,
        /// Requirement text, replacing the configured one.
        #[arg(long)]
        requirement: Option<String>,
        /// Maximum number of verification episodes.
        #[arg(long, default_value_t = 1000)]
        cap: u64,
    },
    /// Draw SVG charts from aggregate metrics.
    Plot {
        /// `label=path` pairs; the path is an aggregate CSV or a run directory.
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long, default_value = "plots")]
        out: PathBuf,
    },
    /// Run fast internal consistency checks.
    Selftest,
}

#[derive(Args)]
struct Setup {
    /// TOML configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    env: Option<EnvKind>,
    #[arg(long)]
    nmax: Option<u32>,
    #[arg(long)]
    preq: Option<f64>,
    #[arg(long)]
    creq: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    pop: Option<usize>,
    #[arg(long)]
    episodes: Option<u64>,
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    reps: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Setup {
    fn resolve(&self, requirement: Option<String>) -> psyco::Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        cfg.apply(&Overrides {
            env: self.env,
            requirement,
            n_max: self.nmax,
            p_req: self.preq,
            c_req: self.creq,
            alpha: self.alpha,
            sigma: self.sigma,
            population: self.pop,
            episodes: self.episodes,
            mode: self.mode,
            seed: self.seed,
            repetitions: self.reps,
            out: self.out.clone(),
        })?;
        cfg.apply_env_override();
        Ok(cfg)
    }
}

fn run(cli: Cli) -> psyco::Result<bool> {
    match cli.command {
        Command::Train { setup } => {
            let cfg = setup.resolve(None)?;
            let out = harness::run_experiment(&cfg)?;
            for r in &out.repetitions {
                if let Some(last) = r.rows.last() {
                    println!(
                        "repetition {}: mean return {:.3}, satisfying {:.2}, c_sat {:.4}, lambda {:.3}",
                        r.repetition, last.mean_return, last.sat_proportion_100, last.c_sat, last.lambda
                    );
                }
            }
            println!("wrote {}", out.aggregate.display());
            Ok(true)
        }
        Command::Verify {
            policy,
            setup,
            requirement,
            cap,
        } => {
            let cfg = setup.resolve(requirement)?;
            let v = harness::verify_policy(&policy, &cfg, cap, cfg.seed)?;
            println!("requirement: {}", cfg.requirement()?);
            println!("verdict: {}", v.outcome.as_str());
            println!("c_sat: {:.6}", v.c_sat);
            println!("episodes: {}", v.episodes_used);
            Ok(true)
        }
        Command::Plot { inputs, out } => {
            let inputs = inputs
                .iter()
                .map(|s| match s.split_once('=') {
                    Some((label, path)) => (label.to_string(), PathBuf::from(path)),
                    None => (s.clone(), PathBuf::from(s)),
                })
                .collect::<Vec<_>>();
            for path in harness::emit_plots(&inputs, &out)? {
                println!("wrote {}", path.display());
            }
            Ok(true)
        }
        Command::Selftest => {
            let checks = selftest();
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            Ok(checks.iter().all(|c| c.passed))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
