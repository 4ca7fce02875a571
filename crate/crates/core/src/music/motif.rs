//! Leitmotif templates and their instantiation as notes.
//!
//! Selections share one melodic theme (a rising scale for entry, its mirror
//! for exit) and differ only in rhythm. Iterations share a chordal theme
//! that opens and closes on the tonic and differ in their progressions.

use crate::config::MusicConfig;
use crate::frontend::{ConstructClass, ConstructKind};
use crate::trace::EventKind;

use super::score::{Motif, NoteEvent};
use super::theory::{tonic_triad, Mode, Numeral};

pub const VOICE_VELOCITY: u8 = 96;
pub const DRONE_VELOCITY: u8 = 64;
pub const PERCUSSION_VELOCITY: u8 = 100;

/// Short cues (condition chords, case ticks, iteration slots) last an eighth.
pub const CUE_SIXTEENTHS: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tone {
    /// 1-based scale degree.
    Degree(u8),
    Chord(Numeral),
    Rest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub tone: Tone,
    pub sixteenths: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotifTemplate {
    pub entry: Vec<Step>,
    pub exit: Vec<Step>,
}

const SELECTION_ENTRY: [u8; 5] = [1, 2, 3, 4, 5];

fn melody(lead_rest: u32, rhythm: [u32; 5], degrees: impl IntoIterator<Item = u8>) -> Vec<Step> {
    let rest = (lead_rest > 0).then_some(Step {
        tone: Tone::Rest,
        sixteenths: lead_rest,
    });
    rest.into_iter()
        .chain(degrees.into_iter().zip(rhythm).map(|(d, s)| Step {
            tone: Tone::Degree(d),
            sixteenths: s,
        }))
        .collect()
}

fn progression(numerals: &[Numeral]) -> Vec<Step> {
    numerals
        .iter()
        .map(|&n| Step {
            tone: Tone::Chord(n),
            sixteenths: 4,
        })
        .collect()
}

pub fn template(kind: ConstructKind) -> MotifTemplate {
    use Numeral::*;
    let selection = |lead_rest, rhythm| MotifTemplate {
        entry: melody(lead_rest, rhythm, SELECTION_ENTRY),
        exit: melody(lead_rest, rhythm, SELECTION_ENTRY.into_iter().rev()),
    };
    let iteration = |entry: &[Numeral], exit: &[Numeral]| MotifTemplate {
        entry: progression(entry),
        exit: progression(exit),
    };
    match kind {
        ConstructKind::If => selection(0, [2, 2, 2, 2, 2]),
        ConstructKind::IfElse => selection(0, [3, 1, 3, 1, 4]),
        ConstructKind::Case => selection(0, [4, 2, 2, 4, 4]),
        ConstructKind::CaseElse => selection(2, [2, 2, 2, 2, 4]),
        ConstructKind::While => iteration(&[I], &[V, I]),
        ConstructKind::Repeat => iteration(&[I, II], &[V, I]),
        ConstructKind::ForTo => iteration(&[I, IV, V], &[IV, V, I]),
        ConstructKind::ForDownto => iteration(&[I, V, IV], &[V, IV, I]),
    }
}

pub(crate) fn ticks(config: &MusicConfig, sixteenths: u32) -> u64 {
    u64::from(sixteenths) * u64::from(config.ticks_per_quarter / 4)
}

pub(crate) fn cue_ticks(config: &MusicConfig) -> u64 {
    ticks(config, CUE_SIXTEENTHS)
}

fn transposition(config: &MusicConfig, depth: u32) -> i32 {
    i32::from(config.depth_step) * depth.min(config.depth_cap) as i32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Melody,
    Chords,
    Drone,
}

/// Tonic pitch for a role at a nesting depth, before clamping.
fn role_tonic(config: &MusicConfig, role: Role, depth: u32) -> i32 {
    let octave = match role {
        Role::Melody => config.melody_octave,
        Role::Chords => config.chord_octave,
        Role::Drone => config.drone_octave,
    };
    i32::from(config.key_root) + 12 * i32::from(octave) + transposition(config, depth)
}

fn role_channel(config: &MusicConfig, role: Role) -> u8 {
    match role {
        Role::Melody => config.channels.melody,
        Role::Chords => config.channels.chords,
        Role::Drone => config.channels.drone,
    }
}

fn class_role(class: ConstructClass) -> Role {
    match class {
        ConstructClass::Selection => Role::Melody,
        ConstructClass::Iteration => Role::Chords,
    }
}

fn clamp_pitch(p: i32) -> u8 {
    p.clamp(0, 127) as u8
}

fn chord(offsets: [i32; 3], tonic: i32, onset: u64, duration: u64, channel: u8) -> [NoteEvent; 3] {
    offsets.map(|o| NoteEvent {
        onset,
        pitch: clamp_pitch(tonic + o),
        duration,
        velocity: VOICE_VELOCITY,
        channel,
    })
}

fn render(steps: &[Step], mode: Mode, role: Role, depth: u32, config: &MusicConfig) -> Motif {
    let tonic = role_tonic(config, role, depth);
    let channel = role_channel(config, role);
    let mut notes = Vec::new();
    let mut cursor = 0;
    for step in steps {
        let duration = ticks(config, step.sixteenths);
        match step.tone {
            Tone::Degree(d) => notes.push(NoteEvent {
                onset: cursor,
                pitch: clamp_pitch(tonic + mode.degree_offset(i32::from(d))),
                duration,
                velocity: VOICE_VELOCITY,
                channel,
            }),
            Tone::Chord(n) => notes.extend(chord(n.triad(mode), tonic, cursor, duration, channel)),
            Tone::Rest => {}
        }
        cursor += duration;
    }
    Motif {
        notes,
        length: cursor,
    }
}

/// Entry leitmotif for `kind`, transposed for `depth`.
pub fn motif_for_entry(kind: ConstructKind, depth: u32, mode: Mode, config: &MusicConfig) -> Motif {
    render(
        &template(kind).entry,
        mode,
        class_role(kind.class()),
        depth,
        config,
    )
}

/// Exit leitmotif; `mode` reflects the construct's final condition.
pub fn motif_for_exit(kind: ConstructKind, depth: u32, mode: Mode, config: &MusicConfig) -> Motif {
    render(
        &template(kind).exit,
        mode,
        class_role(kind.class()),
        depth,
        config,
    )
}

/// Major (true) or minor (false) tonic triad lasting an eighth, voiced on the
/// channel of the construct class that evaluated the condition.
pub fn condition_motif(
    result: bool,
    class: ConstructClass,
    depth: u32,
    config: &MusicConfig,
) -> Motif {
    let role = class_role(class);
    let duration = cue_ticks(config);
    Motif {
        notes: chord(
            tonic_triad(Mode::from(result)),
            role_tonic(config, role, depth),
            0,
            duration,
            role_channel(config, role),
        )
        .to_vec(),
        length: duration,
    }
}

/// Sound for one CASE outcome event: a percussion tick per label scanned,
/// with a major triad on the matching label; a minor triad for the ELSE
/// path; a minor triad an octave lower when nothing matched and there is no
/// ELSE. Other events have no case sound.
pub fn case_event_motif(event: EventKind, depth: u32, config: &MusicConfig) -> Option<Motif> {
    let duration = cue_ticks(config);
    let tonic = role_tonic(config, Role::Melody, depth);
    let channel = config.channels.melody;
    let notes = match event {
        EventKind::CaseScan { matched, .. } => {
            let mut notes = vec![NoteEvent {
                onset: 0,
                pitch: config.percussion_key,
                duration,
                velocity: PERCUSSION_VELOCITY,
                channel: config.channels.percussion,
            }];
            if matched {
                notes.extend(chord(tonic_triad(Mode::Major), tonic, 0, duration, channel));
            }
            notes
        }
        EventKind::CaseElseTaken => {
            chord(tonic_triad(Mode::Minor), tonic, 0, duration, channel).to_vec()
        }
        EventKind::CaseNoMatch => {
            chord(tonic_triad(Mode::Minor), tonic - 12, 0, duration, channel).to_vec()
        }
        _ => return None,
    };
    Some(Motif {
        notes,
        length: duration,
    })
}

/// All case sounds of one CASE activation laid end to end.
pub fn case_scan_events(events: &[EventKind], depth: u32, config: &MusicConfig) -> Motif {
    let mut out = Motif::empty();
    for &ev in events {
        if let Some(m) = case_event_motif(ev, depth, config) {
            out.notes
                .extend(m.notes.into_iter().map(|n| n.shifted(out.length)));
            out.length += m.length;
        }
    }
    out
}

/// Half-open tick interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: u64,
    pub end: u64,
}

/// Background drone for one loop activation.
///
/// WHILE and REPEAT hold a single note across the whole body span, and only
/// when at least one iteration ran. FOR loops sound one note per iteration,
/// from its onset to the next iteration's onset (the last one to the end of
/// the body), stepping one diatonic degree up for TO and down for DOWNTO.
pub fn drone_events(
    kind: ConstructKind,
    body: Span,
    iteration_onsets: &[u64],
    depth: u32,
    config: &MusicConfig,
) -> Vec<NoteEvent> {
    let tonic = role_tonic(config, Role::Drone, depth);
    let channel = config.channels.drone;
    let note = |pitch: i32, start: u64, end: u64| NoteEvent {
        onset: start,
        pitch: clamp_pitch(pitch),
        duration: end - start,
        velocity: DRONE_VELOCITY,
        channel,
    };
    match kind {
        ConstructKind::While | ConstructKind::Repeat => {
            if iteration_onsets.is_empty() || body.end <= body.start {
                Vec::new()
            } else {
                vec![note(tonic, body.start, body.end)]
            }
        }
        ConstructKind::ForTo | ConstructKind::ForDownto => {
            let direction = if kind == ConstructKind::ForTo { 1 } else { -1 };
            iteration_onsets
                .iter()
                .enumerate()
                .filter_map(|(i, &start)| {
                    let end = iteration_onsets.get(i + 1).copied().unwrap_or(body.end);
                    let degree = 1 + direction * i as i32;
                    (end > start)
                        .then(|| note(tonic + Mode::Major.degree_offset(degree), start, end))
                })
                .collect()
        }
        _ => Vec::new(),
    }
}
