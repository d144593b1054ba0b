use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use seidel::error::Error;

mod generate;
mod report;
mod search;

#[derive(Parser)]
#[command(name = "seidel", version, about = "Enumerate and classify Seidel matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate all classes of a given order, optionally pruned.
    Generate {
        #[arg(long)]
        order: usize,
        /// `lambda-min-ge:X` or `eig-mult:R:D`.
        #[arg(long)]
        prune: Option<String>,
        /// Census of starting points; defaults to all classes of a small order.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// `i/m`: only starting points whose index is `i` modulo `m`.
        #[arg(long)]
        shard: Option<String>,
        /// Continue from the checkpoint in the manifest.
        #[arg(long)]
        resume: bool,
    },
    /// Report on a census of one order.
    Census {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        report: report::Report,
        /// Group characteristic polynomials by |det S| mod P to save memory.
        #[arg(long)]
        mod_prime: Option<u64>,
    },
    /// Seidel matrices with exactly three distinct eigenvalues.
    #[command(name = "three-ev", subcommand)]
    ThreeEv(ThreeEv),
    /// Equiangular line systems in a fixed dimension and angle.
    Lines {
        #[arg(long)]
        dimension: usize,
        /// `1/K` with K odd.
        #[arg(long)]
        angle: String,
        #[arg(long)]
        max_order: usize,
        /// Census of starting classes; defaults to order 1.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Also require −K to be the smallest eigenvalue. Defaults to on
        /// without --in and off with it.
        #[arg(long)]
        lambda_min: Option<bool>,
        /// Directory receiving one census file per order.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum ThreeEv {
    /// List the spectra passing every necessary condition.
    Feasible {
        #[arg(long)]
        order: usize,
    },
    /// Find every class with the given spectrum.
    Search {
        /// e.g. `[-3]^2,[1]^3,[3]^1` or `[0]^1,Q(0,-5)^2`.
        #[arg(long, allow_hyphen_values = true)]
        spectrum: String,
        #[arg(long)]
        allow_open: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Whether each class has a regular graph in its switching class.
    RegularCheck {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

/// Failures mapped to exit codes.
enum Fail {
    Usage(String),
    Input(String),
    Internal(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::SpectrumParse(_) | Error::Infeasible(_) => Fail::Usage(e.to_string()),
            _ => Fail::Input(e.to_string()),
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), Fail> {
    match cmd {
        Command::Generate { order, prune, input, out, jobs, shard, resume } => {
            let shard = shard.as_deref().map(generate::parse_shard).transpose()?;
            let params = generate::Params { order, prune, input, out, jobs, shard, resume };
            let n = generate::run(&params)?;
            println!("{n}");
        }
        Command::Census { input, report, mod_prime } => {
            if mod_prime.is_some_and(|p| p < 2) {
                return Err(Fail::Usage("--mod-prime must be at least 2".into()));
            }
            let (text, ok) = report::run(&input, report, mod_prime)?;
            print!("{text}");
            if !ok {
                return Err(Fail::Internal("mass formula mismatch".into()));
            }
        }
        Command::ThreeEv(ThreeEv::Feasible { order }) => print!("{}", search::feasible(order)),
        Command::ThreeEv(ThreeEv::Search { spectrum, allow_open, out, jobs }) => {
            println!("{}", search::search(&spectrum, allow_open, out.as_deref(), jobs)?);
        }
        Command::ThreeEv(ThreeEv::RegularCheck { input }) => print!("{}", search::regular_check(&input)?),
        Command::Lines { dimension, angle, max_order, input, lambda_min, dump, jobs } => {
            let p = search::LinesParams { dimension, angle, max_order, input, lambda_min, dump, jobs };
            print!("{}", search::lines(&p)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match std::panic::catch_unwind(|| dispatch(cli.command)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Fail::Usage(m))) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Ok(Err(Fail::Input(m))) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Ok(Err(Fail::Internal(m))) => {
            eprintln!("assertion failed: {m}");
            ExitCode::from(3)
        }
        Err(_) => ExitCode::from(3),
    }
}
