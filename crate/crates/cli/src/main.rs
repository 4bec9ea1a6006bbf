use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use puiseux::cli::{run, run_oracle, OutputFormat, RunConfig, EXIT_PARSE};
use puiseux::FieldMode;

/// Expand the smallest root of a polynomial in y whose coefficients are
/// Puiseux series in x.
#[derive(Debug, Parser)]
#[command(name = "puiseux", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(flatten)]
    opts: Opts,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every branch found by the classic Newton-Puiseux recursion.
    #[command(hide = true)]
    Oracle(Opts),
}

#[derive(Debug, Args)]
struct Opts {
    /// Polynomial in x and y, e.g. "y^2 - x".
    input: Option<String>,

    /// Read the polynomial from a file instead.
    #[arg(long, conflicts_with = "input")]
    file: Option<PathBuf>,

    /// Number of root terms to compute.
    #[arg(short = 'd', long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    precision: u32,

    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Replace the input by its square-free part first.
    #[arg(long)]
    squarefree: bool,

    /// Cross-check the result against the classic Newton-Puiseux recursion.
    #[arg(long)]
    check_oracle: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl Opts {
    fn config(&self) -> RunConfig {
        RunConfig {
            precision: self.precision as usize,
            field_mode: match self.mode {
                Mode::Exact => FieldMode::Exact,
                Mode::Float => FieldMode::Float,
            },
            output_format: match self.format {
                Format::Text => OutputFormat::Text,
                Format::Json => OutputFormat::Structured,
            },
            squarefree_prepass: self.squarefree,
            oracle_check: self.check_oracle,
        }
    }

    fn source(&self) -> Result<String, String> {
        match (&self.input, &self.file) {
            (Some(s), _) => Ok(s.clone()),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map(|s| s.trim().to_string())
                .map_err(|e| format!("cannot read {}: {e}", path.display())),
            (None, None) => Err("no input given (pass an expression or --file)".into()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (opts, oracle) = match &cli.command {
        Some(Command::Oracle(opts)) => (opts, true),
        None => (&cli.opts, false),
    };
    let src = match opts.source() {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_PARSE as u8);
        }
    };
    let config = opts.config();
    let outcome = if oracle {
        run_oracle(&config, &src)
    } else {
        run(&config, &src)
    };
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.exit_code as u8)
}
