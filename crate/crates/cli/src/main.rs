//! `privslice` command line: analyze SLIR programs for privacy-relevant
//! flows and report GDPR findings.
//!
//! Exit status: 0 when no potential violation is found, 2 when at least one
//! is, 1 on input or usage errors.

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use privslice::analysis::{analyze, Analysis};
use privslice::depgraph::PdgWarning;

const EXIT_CLEAN: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_VIOLATION: u8 = 2;

#[derive(Parser)]
#[command(name = "privslice", version, about = "Privacy slicing and GDPR checks for SLIR programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full analysis and write the bundle and views.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Output directory, created if missing.
        #[arg(long)]
        out: PathBuf,
        /// Artifacts to write; the bundle is always written.
        #[arg(long, value_delimiter = ',', default_value = "bundle")]
        emit: Vec<Emit>,
    },
    /// Print findings as tab-separated lines without writing files.
    Check {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Args)]
struct InputArgs {
    /// SLIR file, or a directory whose `.slir` files form one program.
    #[arg(long)]
    ir: PathBuf,
    /// Catalog JSON; the built-in catalog is used when omitted.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// App name used in slice ids; defaults to the input file stem.
    #[arg(long)]
    app_name: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Emit {
    Bundle,
    Dot,
    Turtle,
}

fn run_analysis(args: &InputArgs) -> anyhow::Result<Analysis> {
    let loaded = input::load(&args.ir, args.catalog.as_deref(), args.app_name.as_deref())?;
    let analysis = analyze(&loaded.app, loaded.program, &loaded.catalog, &loaded.catalog_bytes)?;
    for w in &analysis.warnings {
        match w {
            PdgWarning::Unreachable(s) => eprintln!("warning: unreachable statement {s}"),
        }
    }
    Ok(analysis)
}

fn exit_for(analysis: &Analysis) -> u8 {
    if analysis.has_potential_violation() {
        EXIT_VIOLATION
    } else {
        EXIT_CLEAN
    }
}

fn main() -> ExitCode {
    // Usage errors exit 1 so that 2 stays reserved for findings.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_CLEAN };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Analyze { input, out, emit } => run_analysis(input).and_then(|a| {
            output::write_all(out, &output::artifacts(&a, emit))?;
            Ok(exit_for(&a))
        }),
        Command::Check { input } => run_analysis(input).map(|a| {
            for f in a.findings() {
                println!("{}\t{}\t{}\t{}", f.severity(), f.article(), f.slice_id, f.message);
            }
            exit_for(&a)
        }),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
