//! Trace-to-score scheduling on a single timeline.
//!
//! Motifs are laid end to end on one cursor in trace order. Drones are the
//! only overlapping material: they are added once a loop's body has been
//! placed, spanning from the end of its entry motif to the start of its exit
//! motif, so nested constructs sound over the enclosing loop's drone.

use crate::config::MusicConfig;
use crate::frontend::{ConstructId, ConstructKind};
use crate::trace::{activations, Activation, EventKind, Item, Trace, TraceError};

use super::motif::{
    case_event_motif, condition_motif, cue_ticks, drone_events, motif_for_entry, motif_for_exit,
    Span,
};
use super::score::{Motif, NoteEvent, Score};
use super::theory::Mode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CueRole {
    Entry,
    Exit,
    Condition { result: bool },
    CaseScan { matched: bool },
    CaseElse,
    CaseNoMatch,
    Drone,
}

/// Notes contributed by one trace event (or, for drones, one loop
/// activation), with absolute onsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cue {
    /// `seq` of the event that produced the cue; drones use the loop's Enter.
    pub seq: u64,
    pub construct: ConstructId,
    pub kind: ConstructKind,
    pub depth: u32,
    pub role: CueRole,
    pub mode: Mode,
    pub notes: Vec<NoteEvent>,
    /// Timeline slot occupied by the cue (drones: their full span).
    pub start: u64,
    pub end: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rendering {
    pub score: Score,
    pub cues: Vec<Cue>,
}

pub fn schedule_trace(trace: &Trace, config: &MusicConfig) -> Result<Score, TraceError> {
    render_trace(trace, config).map(|r| r.score)
}

/// Like [`schedule_trace`], also reporting which event produced which notes.
pub fn render_trace(trace: &Trace, config: &MusicConfig) -> Result<Rendering, TraceError> {
    let roots = activations(trace)?;
    let mut sched = Scheduler {
        config,
        cursor: 0,
        cues: Vec::new(),
    };
    for act in &roots {
        sched.activation(act);
    }
    let mut notes: Vec<NoteEvent> = sched
        .cues
        .iter()
        .flat_map(|c| c.notes.iter().copied())
        .collect();
    notes.sort_unstable_by_key(|n| (n.onset, n.channel, n.pitch, n.duration, n.velocity));
    let length = notes
        .iter()
        .map(NoteEvent::end)
        .max()
        .unwrap_or(0)
        .max(sched.cursor);
    Ok(Rendering {
        score: Score {
            notes,
            ticks_per_quarter: config.ticks_per_quarter,
            tempo: config.tempo,
            length,
        },
        cues: sched.cues,
    })
}

struct Scheduler<'c> {
    config: &'c MusicConfig,
    cursor: u64,
    cues: Vec<Cue>,
}

impl Scheduler<'_> {
    fn place(&mut self, act: &Activation, seq: u64, role: CueRole, mode: Mode, motif: Motif) {
        let start = self.cursor;
        self.cues.push(Cue {
            seq,
            construct: act.enter.construct,
            kind: act.kind(),
            depth: act.depth(),
            role,
            mode,
            notes: motif.notes.into_iter().map(|n| n.shifted(start)).collect(),
            start,
            end: start + motif.length,
        });
        self.cursor += motif.length;
    }

    fn activation(&mut self, act: &Activation) {
        let cfg = self.config;
        let kind = act.kind();
        let depth = act.depth();

        self.place(
            act,
            act.enter.seq,
            CueRole::Entry,
            Mode::Major,
            motif_for_entry(kind, depth, Mode::Major, cfg),
        );
        let body_start = self.cursor;
        let mut last_condition: Option<bool> = None;
        let mut iteration_onsets = Vec::new();

        for item in &act.body {
            let ev = match item {
                Item::Child(child) => {
                    self.activation(child);
                    continue;
                }
                Item::Event(ev) => ev,
            };
            match ev.event {
                EventKind::Condition { result } => {
                    last_condition = Some(result);
                    let motif = condition_motif(result, kind.class(), depth, cfg);
                    self.place(
                        act,
                        ev.seq,
                        CueRole::Condition { result },
                        Mode::from(result),
                        motif,
                    );
                }
                EventKind::IterationTick { .. } => {
                    iteration_onsets.push(self.cursor);
                    // FOR iterations are heard through the drone steps, so
                    // each one needs a slot of its own.
                    if kind.is_for() {
                        self.cursor += cue_ticks(cfg);
                    }
                }
                EventKind::CaseScan { matched, .. } => {
                    let motif = case_event_motif(ev.event, depth, cfg).expect("case event");
                    let mode = if matched { Mode::Major } else { Mode::Minor };
                    self.place(act, ev.seq, CueRole::CaseScan { matched }, mode, motif);
                }
                EventKind::CaseElseTaken => {
                    let motif = case_event_motif(ev.event, depth, cfg).expect("case event");
                    self.place(act, ev.seq, CueRole::CaseElse, Mode::Minor, motif);
                }
                EventKind::CaseNoMatch => {
                    let motif = case_event_motif(ev.event, depth, cfg).expect("case event");
                    self.place(act, ev.seq, CueRole::CaseNoMatch, Mode::Minor, motif);
                }
                EventKind::BranchTaken(_) | EventKind::Enter | EventKind::Exit => {}
            }
        }

        let body = Span {
            start: body_start,
            end: self.cursor,
        };
        if kind.is_loop() {
            let drones = drone_events(kind, body, &iteration_onsets, depth, cfg);
            if !drones.is_empty() {
                self.cues.push(Cue {
                    seq: act.enter.seq,
                    construct: act.enter.construct,
                    kind,
                    depth,
                    role: CueRole::Drone,
                    mode: Mode::Major,
                    notes: drones,
                    start: body.start,
                    end: body.end,
                });
            }
        }

        if let Some(exit) = act.exit {
            let mode = if last_condition == Some(false) {
                Mode::Minor
            } else {
                Mode::Major
            };
            self.place(
                act,
                exit.seq,
                CueRole::Exit,
                mode,
                motif_for_exit(kind, depth, mode, cfg),
            );
        }
    }
}
