use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use metalg::workbench::{
    emit_report, parse_field, parse_input, reverify, run_analysis, Analysis, Format, ModuleKind,
    Report, WorkbenchError, WorkbenchInput, EXIT_USAGE, EXIT_VIOLATION,
};

#[derive(Parser)]
#[command(
    name = "metalg",
    version,
    about = "Exact-arithmetic workbench for metagroup algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input document (TOML).
    #[arg(long, short)]
    input: PathBuf,
    /// Override the field of the input: `q` or `gf:p`.
    #[arg(long)]
    field: Option<String>,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// `json` or `text`.
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check the metagroup axioms or the associativity of raw structure constants.
    Verify(Common),
    /// Search for a separating idempotent.
    Idempotent(Common),
    /// Compute H¹ and H² with coefficients in the chosen modules.
    Cohomology {
        #[command(flatten)]
        common: Common,
        /// Comma-separated list of `regular`, `enveloping`, `kernel`.
        #[arg(long, value_delimiter = ',')]
        modules: Option<Vec<String>>,
        /// Comma-separated degrees among 1 and 2.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
    },
    /// Compute the radical and a Wedderburn complement.
    Decompose(Common),
    /// Conjugate two complements of the radical.
    Conjugate(Common),
    /// Run every analysis listed in the input document.
    Run(Common),
    /// Re-check the digests and certificates of a JSON report.
    Reverify {
        /// Report produced with `--format json`.
        report: PathBuf,
    },
}

fn load(common: &Common) -> Result<(WorkbenchInput, Format), WorkbenchError> {
    let text = std::fs::read_to_string(&common.input)
        .map_err(|e| WorkbenchError::Parse(format!("{}: {e}", common.input.display())))?;
    let mut input = parse_input(&text)?;
    if let Some(f) = &common.field {
        parse_field(f)?;
        input.field = f.clone();
    }
    Ok((input, common.format.parse()?))
}

fn execute(common: &Common, input: WorkbenchInput, format: Format) -> Result<i32, WorkbenchError> {
    let base = common.input.parent().map(Path::to_path_buf);
    let report = run_analysis(&input, base.as_deref())?;
    let document = emit_report(&report, format);
    match &common.output {
        Some(path) => std::fs::write(path, document)
            .map_err(|e| WorkbenchError::Parse(format!("{}: {e}", path.display())))?,
        None => print!("{document}"),
    }
    Ok(report.severity().exit_code())
}

fn single(common: &Common, analysis: Analysis) -> Result<i32, WorkbenchError> {
    let (mut input, format) = load(common)?;
    input.analyses = vec![analysis];
    execute(common, input, format)
}

fn run(cli: Cli) -> Result<i32, WorkbenchError> {
    match cli.command {
        Command::Verify(c) => single(&c, Analysis::Verify),
        Command::Idempotent(c) => single(&c, Analysis::Idempotent),
        Command::Decompose(c) => single(&c, Analysis::Decompose),
        Command::Conjugate(c) => single(&c, Analysis::Conjugate),
        Command::Cohomology {
            common,
            modules,
            degrees,
        } => {
            let (mut input, format) = load(&common)?;
            input.analyses = vec![Analysis::Cohomology];
            if let Some(m) = modules {
                input.modules = m
                    .iter()
                    .map(|s| s.parse::<ModuleKind>())
                    .collect::<Result<_, _>>()?;
            }
            if let Some(d) = degrees {
                input.degrees = d;
            }
            execute(&common, input, format)
        }
        Command::Run(c) => {
            let (input, format) = load(&c)?;
            execute(&c, input, format)
        }
        Command::Reverify { report } => {
            let text = std::fs::read_to_string(&report)
                .map_err(|e| WorkbenchError::Parse(format!("{}: {e}", report.display())))?;
            let parsed: Report =
                serde_json::from_str(&text).map_err(|e| WorkbenchError::Parse(e.to_string()))?;
            let outcome = reverify(&parsed);
            if outcome.passed() {
                println!("ok: {} checks passed", outcome.checks);
                Ok(0)
            } else {
                for f in &outcome.failures {
                    println!("FAILED: {f}");
                }
                Ok(EXIT_VIOLATION)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap reports usage errors with its own code 2, which here means a violation
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
