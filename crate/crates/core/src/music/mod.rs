//! Leitmotif engine: from execution traces to scheduled notes.

mod filter;
mod motif;
mod schedule;
mod score;
mod theory;

pub use filter::apply_filters;
pub use motif::{
    case_event_motif, case_scan_events, condition_motif, drone_events, motif_for_entry,
    motif_for_exit, template, MotifTemplate, Span, Step, Tone, CUE_SIXTEENTHS, DRONE_VELOCITY,
    PERCUSSION_VELOCITY, VOICE_VELOCITY,
};
pub use schedule::{render_trace, schedule_trace, Cue, CueRole, Rendering};
pub use score::{Motif, NoteEvent, Score};
pub use theory::{tonic_triad, Mode, Numeral};
