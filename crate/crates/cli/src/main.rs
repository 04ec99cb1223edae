//! `archseam`: validate, trace and export layered architecture models.
//!
//! Exit codes: 0 success, 1 error-severity diagnostics (check, validate,
//! gaps), 2 usage, file access or unusable input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use archseam_core::export::DotScope;
use archseam_core::{Direction, ElementKind};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "archseam",
    version,
    about = "Seam-aware checks and tracing for layered architecture models"
)]
struct Cli {
    /// Write the artifact to this file instead of standard output.
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TraceFormat {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Plantuml,
    Json,
}

#[derive(Debug, Args)]
struct Input {
    /// Model file in the architecture description language.
    file: PathBuf,
}

#[derive(Debug, Args)]
struct Report {
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and resolve the model without running rules.
    Check {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        report: Report,
    },
    /// Run the rule catalog.
    Validate {
        #[command(flatten)]
        input: Input,
        /// Rule configuration (`rule CODE off|error|warning|info` lines).
        #[arg(long, value_name = "PATH")]
        rules: Option<PathBuf>,
        #[command(flatten)]
        report: Report,
    },
    /// Gap findings and coverage for each seam.
    Gaps {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        rules: Option<PathBuf>,
        #[command(flatten)]
        report: Report,
    },
    /// Elements reachable from one element.
    Trace {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "ID")]
        from: String,
        #[arg(long, default_value = "forward")]
        direction: Direction,
        /// Also follow ownership and deployment links.
        #[arg(long)]
        extended: bool,
        #[arg(long, value_name = "N")]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value_t = TraceFormat::Text)]
        format: TraceFormat,
    },
    /// Elements affected by a change to one element, in both directions.
    Impact {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "ID")]
        on: String,
        #[arg(long)]
        extended: bool,
        #[command(flatten)]
        report: Report,
    },
    /// Traceability matrix between two element kinds.
    Matrix {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "KIND")]
        from_kind: ElementKind,
        #[arg(long, value_name = "KIND")]
        to_kind: ElementKind,
        #[arg(long)]
        extended: bool,
        #[command(flatten)]
        report: Report,
    },
    /// Realized fraction of each seam's connecting elements.
    Coverage {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        report: Report,
    },
    /// Render the model as a diagram or JSON.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// `all`, a layer name or `seam1`..`seam4` (DOT only).
        #[arg(long, default_value = "all")]
        scope: DotScope,
    },
    /// Markdown architecture document.
    Doc {
        #[command(flatten)]
        input: Input,
    },
    /// Print the model in canonical form.
    Fmt {
        #[command(flatten)]
        input: Input,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(outcome) => {
            if let Err(message) = commands::emit(&outcome.stdout, cli.output.as_deref()) {
                eprintln!("archseam: {message}");
                return ExitCode::from(2);
            }
            if !outcome.stderr.is_empty() {
                eprint!("{}", outcome.stderr);
            }
            ExitCode::from(outcome.code)
        }
        Err(fatal) => {
            eprint!("{}", fatal.details);
            eprintln!("archseam: {}", fatal.message);
            ExitCode::from(2)
        }
    }
}
