mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use mhecke_core::error::Error;
use mhecke_core::subexpr;
use mhecke_core::verify::Suite;

/// Exact computations in monodromic Hecke algebras.
#[derive(Parser)]
#[command(name = "mhecke", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Root datum / twist config (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Override the modulus `n` from the config.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two element expressions and print the product.
    Mul {
        #[command(flatten)]
        common: Common,
        lhs: String,
        rhs: String,
    },
    /// Write the a, c, d matrices, Ξ and Ψ for (J, 𝐬, λ) to a directory.
    Tables {
        #[command(flatten)]
        common: Common,
        /// Parabolic subset, 1-based, comma separated (empty for none).
        #[arg(long = "J", default_value = "")]
        j: String,
        /// The word 𝐬, 1-based, comma separated.
        #[arg(long)]
        ss: String,
        /// The class λ as κ, comma separated.
        #[arg(long)]
        kappa: String,
        /// Constant added to δ in the `d` column of xi.tsv.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        alpha: i64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run identity suites and report pass/fail.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Override the maximal word length swept.
        #[arg(long)]
        max_r: Option<usize>,
    },
}

/// Exit code 1 is reserved for identity failures; everything else the user
/// can fix (arguments, config, indices) is 2.
fn usage_or_failure(err: &anyhow::Error) -> ExitCode {
    match err.downcast_ref::<Error>() {
        Some(Error::Internal(_)) => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Mul { common, lhs, rhs } => {
            let loaded = config::load(&common.config)?;
            let md = loaded.config.datum(common.n)?;
            println!("{}", commands::mul(&md, &lhs, &rhs)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Tables { common, j, ss, kappa, alpha, out } => {
            let loaded = config::load(&common.config)?;
            let md = loaded.config.datum(common.n)?;
            let args = commands::TablesArgs {
                config_name: &common.config.file_name().map_or_else(String::new, |f| f.to_string_lossy().into_owned()),
                config_sha256: &loaded.sha256,
                j: commands::parse_subset(&md, &j)?,
                ss: subexpr::parse_seq(&ss, md.datum().semisimple_rank())?,
                lambda: commands::parse_kappa(&md, &kappa)?,
                alpha,
            };
            commands::tables(&md, &args, &out)?;
            println!("wrote {} files to {}", commands::TABLE_FILES.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { common, suite, max_r } => {
            let loaded = config::load(&common.config)?;
            let md = loaded.config.datum(common.n)?;
            let mut bounds = loaded.config.bounds();
            if let Some(r) = max_r {
                bounds.max_r = r;
            }
            if let Some(p) = loaded.config.suite.parallelism {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(p)
                    .build_global()
                    .context("configuring worker threads")?;
            }
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let reports = commands::verify(&md, &suites, &bounds)?;
            let mut ok = true;
            for r in &reports {
                println!("{r}");
                ok &= r.passed();
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            usage_or_failure(&e)
        }
    }
}
