//! Command-line arguments and dispatch.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use wlc_core::Side;

use crate::{
    cmd_bench, cmd_divide, cmd_invert, cmd_iterate, cmd_lc, cmd_verify, cmd_wlc, BenchParams,
    CliError, CliResult, Output, ReportFormat,
};

#[derive(Debug, Parser)]
#[command(
    name = "wlc",
    version,
    about = "Linear and word linear complexity of vector sequences over F_p"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Text,
    Kv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Linear complexity and scalar minimal polynomial of a sequence file.
    Lc { seqfile: PathBuf },
    /// Full report including the matrix minimal polynomial.
    Wlc {
        seqfile: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Find x with F(x) = y from the recurrences of the orbit of y.
    Invert {
        mapfile: PathBuf,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 4096)]
        max_terms: usize,
    },
    /// Write the iterates y, F(y), ... as a sequence file.
    Iterate {
        mapfile: PathBuf,
        #[arg(long)]
        y: String,
        #[arg(long)]
        count: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Euclidean division of matrix polynomials.
    Divide {
        #[arg(long)]
        dividend: PathBuf,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
    },
    /// Check the structural invariants of a periodic sequence file.
    Verify { seqfile: PathBuf },
    /// Analyse random maps and report one CSV line per trial.
    Bench {
        #[arg(long)]
        field: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        permutation: bool,
    },
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))
}

/// Runs a parsed command. `iterate --out` writes its file here.
pub fn run(cli: Cli) -> CliResult<Output> {
    match cli.command {
        Command::Lc { seqfile } => cmd_lc(&read(&seqfile)?),
        Command::Wlc { seqfile, format } => {
            let format = match format {
                FormatArg::Text => ReportFormat::Text,
                FormatArg::Kv => ReportFormat::Kv,
            };
            cmd_wlc(&read(&seqfile)?, format)
        }
        Command::Invert {
            mapfile,
            y,
            max_terms,
        } => cmd_invert(&read(&mapfile)?, &y, max_terms),
        Command::Iterate {
            mapfile,
            y,
            count,
            out,
        } => {
            let mut output = cmd_iterate(&read(&mapfile)?, &y, count)?;
            if let Some(path) = out {
                std::fs::write(&path, &output.stdout).map_err(|e| {
                    CliError::parse(format!("cannot write {}: {e}", path.display()))
                })?;
                output.stdout.clear();
            }
            Ok(output)
        }
        Command::Divide {
            dividend,
            divisor,
            side,
        } => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            cmd_divide(&read(&dividend)?, &read(&divisor)?, side)
        }
        Command::Verify { seqfile } => cmd_verify(&read(&seqfile)?),
        Command::Bench {
            field,
            dim,
            trials,
            seed,
            permutation,
        } => cmd_bench(BenchParams {
            p: field,
            n: dim,
            trials,
            seed,
            permutation,
        }),
    }
}
