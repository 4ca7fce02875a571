//! `caitlin`: auralize Pascal programs as MIDI, or dump their traces.
//!
//! Exit status: 0 success, 1 lexical/syntax/semantic error, 2 runtime error
//! (partial output still written), 3 I/O, configuration or usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use auralize_core::config::{load_config, MusicConfig, Overrides};
use auralize_core::frontend::{ConstructClass, ConstructKind};
use auralize_core::interp::Value;
use auralize_core::pipeline::{auralize_source, parse_input_values, run_source, PipelineError};
use auralize_core::trace::{serialize_trace, Termination, Trace};
use clap::{Args, Parser, Subcommand};

const EXIT_FRONTEND: u8 = 1;
const EXIT_RUNTIME: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "caitlin",
    version,
    about = "Musical auralization of Pascal programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a program and write its auralization as a Standard MIDI File.
    Auralize(AuralizeArgs),
    /// Run a program and write its execution trace as JSON lines.
    Trace(TraceArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Pascal source file.
    src: PathBuf,
    /// Readln values, whitespace separated ("-" reads standard input).
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// key=value configuration file.
    #[arg(long, value_name = "PATH", env = "CAITLIN_CONFIG")]
    config: Option<PathBuf>,
    /// Stop after this many trace events.
    #[arg(long, value_name = "N")]
    max_events: Option<usize>,
    /// Stop after this many executed statements.
    #[arg(long, value_name = "N")]
    max_steps: Option<u64>,
}

#[derive(Args, Debug)]
struct AuralizeArgs {
    #[command(flatten)]
    common: Common,
    /// Output file (default: source path with a .mid extension).
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Tempo in quarter notes per minute.
    #[arg(long, value_name = "N")]
    tempo: Option<u32>,
    /// MIDI note number of the tonic.
    #[arg(long, value_name = "N")]
    key: Option<u8>,
    /// Auralize only this construct class (repeatable).
    #[arg(long, value_name = "CLASS", value_parser = parse_class)]
    filter_class: Vec<ConstructClass>,
    /// Auralize only this construct kind (repeatable).
    #[arg(long, value_name = "KIND", value_parser = parse_kind)]
    filter_kind: Vec<ConstructKind>,
    /// Omit constructs nested deeper than N.
    #[arg(long, value_name = "N")]
    max_depth: Option<u32>,
    /// Auralize at most N iterations of each loop activation.
    #[arg(long, value_name = "N")]
    max_iters: Option<u64>,
    /// Also write the unfiltered trace next to the MIDI file (.jsonl).
    #[arg(long)]
    dump_trace: bool,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[command(flatten)]
    common: Common,
    /// Output file (default: source path with a .jsonl extension).
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
}

fn parse_class(s: &str) -> Result<ConstructClass, String> {
    s.parse()
}

fn parse_kind(s: &str) -> Result<ConstructKind, String> {
    s.parse()
}

/// A failure already reported to the user, carrying the exit status.
struct Failure(u8);

fn fail(code: u8, message: impl std::fmt::Display) -> Failure {
    eprintln!("caitlin: {message}");
    Failure(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_IO)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Auralize(args) => run_auralize(args),
        Command::Trace(args) => run_trace(args),
    };
    match result {
        Ok(code) | Err(Failure(code)) => ExitCode::from(code),
    }
}

fn with_extension(src: &Path, ext: &str) -> PathBuf {
    src.with_extension(ext)
}

fn read_text(path: &Path, what: &str) -> Result<String, Failure> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    text.map_err(|e| {
        fail(
            EXIT_IO,
            format!("cannot read {what} {}: {e}", path.display()),
        )
    })
}

fn read_inputs(path: Option<&Path>) -> Result<Vec<Value>, Failure> {
    match path {
        None => Ok(Vec::new()),
        Some(p) => parse_input_values(&read_text(p, "input")?)
            .map_err(|e| fail(EXIT_IO, format!("{}: {e}", p.display()))),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes)
        .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

fn load(common: &Common, overrides: Overrides) -> Result<MusicConfig, Failure> {
    let overrides = Overrides {
        max_events: common.max_events,
        max_steps: common.max_steps,
        ..overrides
    };
    load_config(common.config.as_deref(), &overrides).map_err(|e| fail(EXIT_IO, e))
}

/// Echoes program output and maps the trace status to an exit code.
fn finish(trace: &Trace, error: Option<&impl std::fmt::Display>) -> u8 {
    print!("{}", trace.stdout);
    match trace.status {
        Termination::Completed => 0,
        Termination::LimitExceeded => {
            eprintln!("caitlin: warning: execution limit reached, output is truncated");
            0
        }
        Termination::RuntimeError => {
            match error {
                Some(e) => eprintln!("caitlin: runtime error: {e}"),
                None => eprintln!("caitlin: runtime error"),
            }
            EXIT_RUNTIME
        }
    }
}

fn run_auralize(args: AuralizeArgs) -> Result<u8, Failure> {
    let overrides = Overrides {
        tempo: args.tempo,
        key_root: args.key,
        classes: (!args.filter_class.is_empty()).then(|| args.filter_class.clone()),
        kinds: (!args.filter_kind.is_empty()).then(|| args.filter_kind.clone()),
        max_depth: args.max_depth,
        max_iterations: args.max_iters,
        ..Overrides::default()
    };
    let config = load(&args.common, overrides)?;
    let source = read_text(&args.common.src, "source")?;
    let input = read_inputs(args.common.input.as_deref())?;

    let result = auralize_source(&source, &input, &config).map_err(|e| match e {
        PipelineError::Frontend(e) => fail(EXIT_FRONTEND, e),
        other => fail(EXIT_IO, other),
    })?;

    let output = args
        .output
        .unwrap_or_else(|| with_extension(&args.common.src, "mid"));
    write_file(&output, &result.smf)?;
    if args.dump_trace {
        let sidecar = with_extension(&output, "jsonl");
        write_file(
            &sidecar,
            serialize_trace(&result.execution.trace).as_bytes(),
        )?;
    }
    Ok(finish(
        &result.execution.trace,
        result.execution.error.as_ref(),
    ))
}

fn run_trace(args: TraceArgs) -> Result<u8, Failure> {
    let config = load(&args.common, Overrides::default())?;
    let source = read_text(&args.common.src, "source")?;
    let input = read_inputs(args.common.input.as_deref())?;
    let (_, execution) =
        run_source(&source, &input, &config).map_err(|e| fail(EXIT_FRONTEND, e))?;
    let output = args
        .output
        .unwrap_or_else(|| with_extension(&args.common.src, "jsonl"));
    write_file(&output, serialize_trace(&execution.trace).as_bytes())?;
    Ok(finish(&execution.trace, execution.error.as_ref()))
}
