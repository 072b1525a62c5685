use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use coarse_cli::report::ReportDocument;
use coarse_cli::run::{run, CommandKind, RunInputs};
use coarse_cli::spec::SpecDocument;
use coarse_cli::{spec_hash, CliError};
use coarse_core::{Budget, CheckOptions, Verdict, Window};

/// Batch verifier for bounded coarse structures: feed it a declarative
/// spec file, get a machine-readable evidence report and a meaningful
/// exit code (0 pass, 1 fail, 2 parse/validation error, 3 budget
/// overflow, 4 internal invariant violation).
#[derive(Parser)]
#[command(name = "coarse", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an entourage against a bound certificate on the window.
    Verify(CommonArgs),
    /// Pseudometric axioms for every family member, plus the
    /// certificate-algebra closure suite over the certified bindings.
    Axioms(CommonArgs),
    /// Compute a certificate's envelope and check its soundness.
    Envelope(CommonArgs),
    /// Properness of envelope sections at the listed base points.
    Proper(CommonArgs),
    /// Construct an escapee defeating the candidate list, with witnesses.
    Defeat(CommonArgs),
    /// Check that every certified probe is contained in some candidate.
    Generates(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Path to the spec document (one JSON object).
    #[arg(long)]
    spec: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Evaluation budget (default 10^7 tuple evaluations).
    #[arg(long)]
    budget: Option<u64>,
    /// JSON window descriptor replacing the spec's window.
    #[arg(long = "window-override")]
    window_override: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match &cli.command {
        Command::Verify(a) => (CommandKind::Verify, a),
        Command::Axioms(a) => (CommandKind::Axioms, a),
        Command::Envelope(a) => (CommandKind::Envelope, a),
        Command::Proper(a) => (CommandKind::Proper, a),
        Command::Defeat(a) => (CommandKind::Defeat, a),
        Command::Generates(a) => (CommandKind::Generates, a),
    };
    match execute(kind, args) {
        Ok(report) => {
            let body = report.to_json();
            if let Some(path) = &args.out {
                if let Err(e) = std::fs::write(path, &body) {
                    eprintln!("cannot write report to {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{body}");
            }
            match report.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Fail => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(kind: CommandKind, args: &CommonArgs) -> Result<ReportDocument, CliError> {
    let bytes = std::fs::read(&args.spec).map_err(|e| {
        CliError::Validation(format!("cannot read spec {}: {e}", args.spec.display()))
    })?;
    let hash = spec_hash(&bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::Parse("spec file is not valid UTF-8".into()))?;
    let spec = SpecDocument::parse(&text)?;

    let window_override = match &args.window_override {
        None => None,
        Some(descriptor) => Some(
            serde_json::from_str::<Window>(descriptor)
                .map_err(|e| CliError::Validation(format!("bad window override: {e}")))?,
        ),
    };

    let mut options = CheckOptions::default();
    if let Some(limit) = args.budget {
        options.budget = Budget::new(limit);
    }

    run(
        kind,
        &RunInputs {
            spec,
            spec_hash: hash,
            window_override,
            options,
        },
    )
}
