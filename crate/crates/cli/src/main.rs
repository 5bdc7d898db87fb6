use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lle_cli::config::parse_ratio_list;
use lle_cli::{cmd_generate, cmd_run, cmd_sweep_eps, CliError, ExperimentConfig};

#[derive(Parser)]
#[command(name = "lle", version, about = "Locally linear embedding experiments on the Swiss roll with a hole")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the Swiss roll (optionally embedded) and write swissroll.csv.
    Generate(Common),
    /// Run LLE once and write embedding.csv, pattern.csv, report.csv, scatter.svg.
    Run(Common),
    /// Run regularized LLE for several eps ratios.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Comma-separated eps ratios.
        #[arg(long = "eps-ratios")]
        eps_ratios: Option<String>,
    },
}

#[derive(Args)]
struct Common {
    /// key=value file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "n")]
    n: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    d: Option<String>,
    /// none, e1, e2 or e3.
    #[arg(long)]
    embed: Option<String>,
    /// Output dimension of the isometric embedding.
    #[arg(long)]
    dout: Option<String>,
    /// exact or reg.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long = "eps-ratio")]
    eps_ratio: Option<String>,
    /// Read the point cloud from CSV instead of sampling it.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Sample the full roll without the hole.
    #[arg(long = "no-hole")]
    no_hole: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn resolve(&self) -> Result<ExperimentConfig, CliError> {
        let mut config = ExperimentConfig::default();
        if let Some(path) = &self.config {
            config.apply_file(path)?;
        }
        let flags = [
            ("n", &self.n),
            ("seed", &self.seed),
            ("k", &self.k),
            ("d", &self.d),
            ("embed", &self.embed),
            ("dout", &self.dout),
            ("mode", &self.mode),
            ("eps_ratio", &self.eps_ratio),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                config.set(key, v)?;
            }
        }
        if self.no_hole {
            config.hole = false;
        }
        if let Some(p) = &self.input {
            config.input = Some(p.clone());
        }
        if let Some(p) = &self.out {
            config.out = p.clone();
        }
        Ok(config)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate(common) => {
            let path = cmd_generate(&common.resolve()?)?;
            println!("wrote {}", path.display());
        }
        Command::Run(common) => {
            let config = common.resolve()?;
            let outcome = cmd_run(&config)?;
            let r = &outcome.report;
            println!(
                "affine_fit_residual={:.4} param_recovery={} null_multiplicity={} constant_vector_found={} projection_detected={}",
                r.affine_fit_residual,
                r.param_recovery.map_or("n/a".to_string(), |v| format!("{v:.4}")),
                r.null_multiplicity,
                r.constant_vector_found,
                r.projection_detected()
            );
            println!("wrote {}", config.out.display());
        }
        Command::Sweep { common, eps_ratios } => {
            let mut config = common.resolve()?;
            if let Some(list) = eps_ratios {
                config.eps_ratios = parse_ratio_list(&list)?;
            }
            let outcomes = cmd_sweep_eps(&config, &config.eps_ratios)?;
            for (eps, o) in config.eps_ratios.iter().zip(&outcomes) {
                println!("eps_ratio={eps:e} affine_fit_residual={:.4}", o.report.affine_fit_residual);
            }
            println!("wrote {}", config.out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
