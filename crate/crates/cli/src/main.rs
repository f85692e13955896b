//! `linvol`: exact computations on linear involutions from a spec file.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Parser, Subcommand, ValueEnum};
use linvol::returns::{Budget, ReturnKind};
use linvol_cli::{spec, CliError, Limits};

#[derive(Parser)]
#[command(name = "linvol", version, about = "Exact linear involutions, return words and free-group bases")]
struct Cli {
    /// Steps searched for connections before dynamical commands run.
    #[arg(long, global = true, default_value_t = 256)]
    connection_horizon: usize,
    /// Longest word the language scan may build.
    #[arg(long, global = true, default_value_t = 256)]
    scan_limit: usize,
    /// Step limit for first-return maps (default 10·k·scan-limit).
    #[arg(long, global = true)]
    horizon: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classification, layout and connection status.
    Info { spec: PathBuf },
    /// Every word of the natural coding up to a length.
    Language {
        spec: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Return words to a word.
    Returns {
        spec: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Kind::Complete)]
        kind: Kind,
    },
    /// Prime words of a finite-index subgroup.
    Prime {
        spec: PathBuf,
        /// `even`, or `@path` to a subgroup graph file.
        #[arg(long, default_value = "even")]
        subgroup: String,
    },
    /// Check a property word by word; exits 1 on any failure or skip.
    Verify {
        spec: PathBuf,
        #[arg(long, value_enum)]
        check: CheckArg,
        #[arg(long, default_value_t = 5)]
        max_word_len: usize,
        /// Subgroup for `--check group`.
        #[arg(long, default_value = "even")]
        subgroup: String,
    },
    /// Rauzy induction steps with their substitutions.
    Rauzy {
        spec: PathBuf,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// The involution induced on the projection of a word's interval.
    Induce {
        spec: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Draw the interval diagram as SVG.
    Render {
        spec: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Complete,
    Mixed,
    Right,
    Left,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Returns,
    Group,
    Cardinality,
    InverseInterval,
}

enum Outcome {
    Text(String),
    Verified(String, bool),
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let limits = Limits {
        connection_horizon: cli.connection_horizon,
        budget: Budget { max_len: cli.scan_limit, horizon: cli.horizon },
    };
    let load = |p: &PathBuf| spec::load(p).map_err(CliError::from);
    Ok(match &cli.command {
        Command::Info { spec } => Outcome::Text(linvol_cli::info(&load(spec)?, &limits)),
        Command::Language { spec, max_len } => Outcome::Text(linvol_cli::language_cmd(&load(spec)?, *max_len, &limits)?),
        Command::Returns { spec, word, kind } => {
            let t = load(spec)?;
            let kind = match kind {
                Kind::Complete => ReturnKind::Complete,
                Kind::Mixed => ReturnKind::Mixed,
                Kind::Right => ReturnKind::Right,
                Kind::Left => ReturnKind::Left,
            };
            Outcome::Text(linvol_cli::returns_cmd(&t, &linvol_cli::parse_word(word)?, kind, &limits)?)
        }
        Command::Prime { spec, subgroup } => {
            let t = load(spec)?;
            let g = linvol_cli::load_subgroup(&t, subgroup)?;
            Outcome::Text(linvol_cli::prime_cmd(&t, &g, &limits)?)
        }
        Command::Verify { spec, check, max_word_len, subgroup } => {
            let (check, name) = match check {
                CheckArg::Returns => (linvol_cli::Check::Returns, "returns"),
                CheckArg::Group => (linvol_cli::Check::Group, "group"),
                CheckArg::Cardinality => (linvol_cli::Check::Cardinality, "cardinality"),
                CheckArg::InverseInterval => (linvol_cli::Check::InverseInterval, "inverse-interval"),
            };
            let report = linvol_cli::verify(&load(spec)?, check, *max_word_len, subgroup, &limits)?;
            Outcome::Verified(report.render(name), report.ok())
        }
        Command::Rauzy { spec, steps } => Outcome::Text(linvol_cli::rauzy_cmd(&load(spec)?, *steps, &limits)?),
        Command::Induce { spec, word } => {
            let t = load(spec)?;
            Outcome::Text(linvol_cli::induce_cmd(&t, &linvol_cli::parse_word(word)?, &limits)?)
        }
        Command::Render { spec, output } => {
            let svg = linvol_cli::render::svg(&load(spec)?);
            std::fs::write(output, svg).with_context(|| format!("writing {}", output.display()))?;
            Outcome::Text(String::new())
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let (text, ok) = match outcome {
                Outcome::Text(t) => (t, true),
                Outcome::Verified(t, ok) => (t, ok),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<CliError>().map_or(1, CliError::exit_code);
            ExitCode::from(code)
        }
    }
}
