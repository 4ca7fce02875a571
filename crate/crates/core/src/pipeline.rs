//! The full source-to-MIDI chain in one call.

use thiserror::Error;

use crate::config::MusicConfig;
use crate::frontend::{parse_source, FrontendError, Program};
use crate::interp::{execute_program, Execution, Value};
use crate::midi::{write_smf, MidiError};
use crate::music::{apply_filters, render_trace, Rendering};
use crate::trace::{Trace, TraceError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Frontend(#[from] FrontendError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Midi(#[from] MidiError),
}

#[derive(Clone, Debug)]
pub struct Auralization {
    pub program: Program,
    /// Unfiltered execution result.
    pub execution: Execution,
    /// The trace actually rendered, after filters.
    pub audible: Trace,
    pub rendering: Rendering,
    pub smf: Vec<u8>,
}

/// Parses and runs `source` under `config.limits`.
pub fn run_source(
    source: &str,
    input: &[Value],
    config: &MusicConfig,
) -> Result<(Program, Execution), FrontendError> {
    let program = parse_source(source)?;
    let execution = execute_program(&program, input, config.limits);
    Ok((program, execution))
}

/// Runs `source` and renders its filtered trace to SMF bytes. A runtime
/// error is not a failure here: the partial trace is rendered and the error
/// is left in `execution.error`.
pub fn auralize_source(
    source: &str,
    input: &[Value],
    config: &MusicConfig,
) -> Result<Auralization, PipelineError> {
    let (program, execution) = run_source(source, input, config)?;
    let audible = apply_filters(&execution.trace, &config.filters)?;
    let rendering = render_trace(&audible, config)?;
    let smf = write_smf(&rendering.score, config)?;
    Ok(Auralization {
        program,
        execution,
        audible,
        rendering,
        smf,
    })
}

/// Parses whitespace-separated input literals for Readln.
pub fn parse_input_values(text: &str) -> Result<Vec<Value>, String> {
    text.split_whitespace()
        .enumerate()
        .map(|(i, tok)| {
            tok.parse::<Value>()
                .map_err(|e| format!("input value {}: {e}", i + 1))
        })
        .collect()
}
