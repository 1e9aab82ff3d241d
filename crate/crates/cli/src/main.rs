use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hilbert_lab::algebra::RingPresentation;
use hilbert_lab::campaign::{closure_report, fuzz, FuzzConfig};
use hilbert_lab::determinantal::{verify_shape, Shape, DEFAULT_ORDER, MAX_ENTRIES};
use hilbert_lab::session::{analyze, SessionConfig, DEFAULT_MAX_ORDER, DEFAULT_SEED};
use hilbert_lab::Error;

mod render;

#[derive(Parser)]
#[command(name = "hilbert-lab", version, about = "Hilbert coefficients and reductions of m-primary ideals")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the ideal of a presentation file.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Table depth; raised to 2d + 2 if lower.
        #[arg(long)]
        nmax: Option<usize>,
        /// Treat I as integrally closed when this cannot be checked.
        #[arg(long)]
        assume_integrally_closed: bool,
        /// Replace the characteristic of the file.
        #[arg(long)]
        p: Option<u32>,
        /// Largest n for the C_n and L_n tables.
        #[arg(long)]
        filtration_depth: Option<usize>,
        /// Sample reduction numbers from this many further seeds.
        #[arg(long, default_value_t = 0)]
        extra_seeds: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// Check the determinantal ring of s x s minors of a generic s x t matrix.
    Detring {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        /// Write the ring presentation here, for use with `analyze`.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, default_value_t = 32003)]
        p: u32,
        /// Largest number of matrix entries accepted.
        #[arg(long, default_value_t = MAX_ENTRIES)]
        cap: usize,
    },
    /// Integral closure of a monomial ideal.
    Closure {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// Check the claims on random integrally closed monomial ideals.
    Fuzz {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        max_deg: u16,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Directory for reproducer files of failing trials.
        #[arg(long)]
        reproducers: Option<PathBuf>,
    },
}

fn read_presentation(path: &Path) -> Result<RingPresentation> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    RingPresentation::parse(&text).with_context(|| format!("in {}", path.display()))
}

fn emit(cli: &Cli, text: String, value: &impl Serialize) -> Result<()> {
    let body = match cli.format {
        Format::Text => text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value)?;
            s.push('\n');
            s
        }
    };
    match &cli.output {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{body}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Analyze {
            file,
            seed,
            nmax,
            assume_integrally_closed,
            p,
            filtration_depth,
            extra_seeds,
            max_order,
        } => {
            let pres = read_presentation(file)?;
            let config = SessionConfig {
                seed: *seed,
                p_override: *p,
                n_max: *nmax,
                filtration_depth: *filtration_depth,
                assume_integrally_closed: *assume_integrally_closed,
                max_order: *max_order,
                extra_seeds: *extra_seeds,
                ..SessionConfig::default()
            };
            let report = analyze(&pres, &config)?;
            emit(cli, render::analysis(&report), &report)?;
            Ok(report.outcome.exit_code() as u8)
        }
        Command::Detring { s, t, emit: path, order, p, cap } => {
            let shape = Shape::with_cap(*s, *t, *cap)?;
            if let Some(path) = path {
                let text = shape.presentation(*p)?.to_text();
                std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            let report = verify_shape(shape, *p, *order, *order)?;
            emit(cli, render::determinantal(&report), &report)?;
            Ok(report.outcome.exit_code() as u8)
        }
        Command::Closure { file, max_order } => {
            let pres = read_presentation(file)?;
            let report = closure_report(&pres, *max_order)?;
            emit(cli, render::closure(&report), &report)?;
            Ok(0)
        }
        Command::Fuzz {
            vars,
            max_deg,
            trials,
            seed,
            reproducers,
        } => {
            let config = FuzzConfig {
                vars: *vars,
                max_deg: *max_deg,
                trials: *trials,
                seed: *seed,
            };
            let summary = fuzz(&config)?;
            if let Some(dir) = reproducers {
                std::fs::create_dir_all(dir)?;
                for trial in &summary.trials {
                    if let Some(text) = &trial.reproducer {
                        let path = dir.join(format!("trial-{}.ring", trial.index));
                        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                    }
                }
            }
            emit(cli, render::fuzz(&summary), &summary)?;
            Ok(summary.outcome().exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            // a failed internal check is a finding; everything else is an input or capacity problem
            let invariant = err
                .chain()
                .any(|e| matches!(e.downcast_ref::<Error>(), Some(Error::Invariant(_))));
            ExitCode::from(if invariant { 1 } else { 2 })
        }
    }
}
