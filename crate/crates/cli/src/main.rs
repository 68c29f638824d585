use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod error;

use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "csurg", version, about = "Exact contact surgery calculus")]
struct Cli {
    /// Knot catalog to use instead of the built-in seed.
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,

    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List catalog entries, or show one.
    Catalog { name: Option<String> },

    /// Expand contact r-surgery into (+1)/(-1) presentations.
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        tb: i64,
        #[arg(long, allow_hyphen_values = true)]
        rot: i64,
        /// Contact surgery coefficient, e.g. 3, -5/2 or 7/3.
        #[arg(long, allow_hyphen_values = true)]
        coeff: String,
        /// Catalog knot type, used for bound lints.
        #[arg(long)]
        knot: Option<String>,
    },

    /// Linking matrix, |H_1|, signature and Euler characteristic of a diagram.
    Homology {
        #[arg(long)]
        file: PathBuf,
    },

    /// The d3 invariant of a diagram.
    D3 {
        #[arg(long)]
        file: PathBuf,
    },

    /// Surgery coefficients known to give tight structures.
    Classify {
        #[arg(long)]
        knot: String,
    },

    /// Vanishing ledger of a Legendrian or transverse knot across framings.
    Ledger(commands::LedgerArgs),

    /// Manipulate open book monodromy words.
    Openbook(commands::OpenBookArgs),

    /// Run the built-in acceptance checks.
    Selftest,
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let ctx = commands::Context::new(cli.catalog.as_deref(), cli.json)?;
    match cli.command {
        Command::Catalog { name } => ctx.catalog(name.as_deref(), out),
        Command::Expand { tb, rot, coeff, knot } => ctx.expand(tb, rot, &coeff, knot.as_deref(), out),
        Command::Homology { file } => ctx.homology(&file, out),
        Command::D3 { file } => ctx.d3(&file, out),
        Command::Classify { knot } => ctx.classify(&knot, out),
        Command::Ledger(args) => ctx.ledger(&args, out),
        Command::Openbook(args) => ctx.openbook(&args, out),
        Command::Selftest => ctx.selftest(out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
