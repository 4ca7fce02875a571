//! Standard MIDI File (format 1) writer.
//!
//! Track 0 carries the tempo; each channel that has notes gets its own
//! track, in ascending channel order. Every event carries its status byte.

mod vlq;

pub use vlq::{decode_vlq, encode_vlq, VLQ_LIMIT};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::config::MusicConfig;
use crate::music::{NoteEvent, Score};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MidiError {
    #[error("value {0} does not fit a MIDI variable-length quantity")]
    VlqRange(u64),
    #[error("note at tick {onset} has out-of-range field: {message}")]
    InvalidNote { onset: u64, message: String },
    #[error("tempo {0} bpm cannot be expressed as a tempo meta event")]
    Tempo(u32),
    #[error("track {0} exceeds the chunk size limit")]
    TrackTooLong(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MidiEvent {
    /// Microseconds per quarter note.
    Tempo(u32),
    ProgramChange {
        channel: u8,
        program: u8,
    },
    NoteOn {
        channel: u8,
        pitch: u8,
        velocity: u8,
    },
    NoteOff {
        channel: u8,
        pitch: u8,
    },
    EndOfTrack,
}

impl MidiEvent {
    fn bytes(&self) -> Vec<u8> {
        match *self {
            MidiEvent::Tempo(us) => {
                let [_, a, b, c] = us.to_be_bytes();
                vec![0xFF, 0x51, 0x03, a, b, c]
            }
            MidiEvent::ProgramChange { channel, program } => vec![0xC0 | channel, program],
            MidiEvent::NoteOn {
                channel,
                pitch,
                velocity,
            } => vec![0x90 | channel, pitch, velocity],
            MidiEvent::NoteOff { channel, pitch } => vec![0x80 | channel, pitch, 0],
            MidiEvent::EndOfTrack => vec![0xFF, 0x2F, 0x00],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrackEvent {
    /// Absolute tick.
    pub tick: u64,
    pub event: MidiEvent,
}

pub type Track = Vec<TrackEvent>;

pub fn tempo_micros(bpm: u32) -> Result<u32, MidiError> {
    let us = 60_000_000 / u64::from(bpm.max(1));
    if bpm == 0 || us == 0 || us >= 1 << 24 {
        return Err(MidiError::Tempo(bpm));
    }
    Ok(us as u32)
}

/// Makes notes on the same channel and pitch disjoint so that every
/// note-on pairs with exactly one note-off. Of two notes starting together
/// the longer one survives; an earlier note is cut where the next begins.
/// Zero-length notes are dropped.
pub fn normalize_notes(notes: &[NoteEvent]) -> Vec<NoteEvent> {
    let mut voices: BTreeMap<(u8, u8), Vec<NoteEvent>> = BTreeMap::new();
    for n in notes.iter().filter(|n| n.duration > 0) {
        voices.entry((n.channel, n.pitch)).or_default().push(*n);
    }
    let mut out = Vec::with_capacity(notes.len());
    for mut voice in voices.into_values() {
        voice.sort_by_key(|n| (n.onset, std::cmp::Reverse(n.duration), n.velocity));
        voice.dedup_by_key(|n| n.onset);
        for i in 0..voice.len() {
            let mut n = voice[i];
            if let Some(next) = voice.get(i + 1) {
                n.duration = n.duration.min(next.onset - n.onset);
            }
            out.push(n);
        }
    }
    out.sort_unstable_by_key(|n| (n.onset, n.channel, n.pitch));
    out
}

fn check_note(n: &NoteEvent) -> Result<(), MidiError> {
    let bad = |message: &str| {
        Err(MidiError::InvalidNote {
            onset: n.onset,
            message: message.to_string(),
        })
    };
    if n.channel > 15 {
        return bad("channel above 15");
    }
    if n.pitch > 127 {
        return bad("pitch above 127");
    }
    if n.velocity == 0 || n.velocity > 127 {
        return bad("velocity outside 1..=127");
    }
    Ok(())
}

/// Builds absolute-time event lists: the tempo track first, then one track
/// per used channel.
pub fn build_tracks(score: &Score, config: &MusicConfig) -> Result<Vec<Track>, MidiError> {
    let mut tracks = vec![vec![
        TrackEvent {
            tick: 0,
            event: MidiEvent::Tempo(tempo_micros(score.tempo)?),
        },
        TrackEvent {
            tick: 0,
            event: MidiEvent::EndOfTrack,
        },
    ]];

    let mut by_channel: BTreeMap<u8, Vec<NoteEvent>> = BTreeMap::new();
    for n in normalize_notes(&score.notes) {
        check_note(&n)?;
        by_channel.entry(n.channel).or_default().push(n);
    }

    for (channel, notes) in by_channel {
        // (tick, note-off first, pitch)
        let mut timed: Vec<(u64, bool, u8, MidiEvent)> = Vec::with_capacity(notes.len() * 2);
        for n in &notes {
            timed.push((
                n.onset,
                true,
                n.pitch,
                MidiEvent::NoteOn {
                    channel,
                    pitch: n.pitch,
                    velocity: n.velocity,
                },
            ));
            timed.push((
                n.end(),
                false,
                n.pitch,
                MidiEvent::NoteOff {
                    channel,
                    pitch: n.pitch,
                },
            ));
        }
        timed.sort_by_key(|&(tick, on, pitch, _)| (tick, on, pitch));

        let mut track = Vec::with_capacity(timed.len() + 2);
        if let Some(program) = program_for(channel, config) {
            track.push(TrackEvent {
                tick: 0,
                event: MidiEvent::ProgramChange { channel, program },
            });
        }
        track.extend(
            timed
                .into_iter()
                .map(|(tick, _, _, event)| TrackEvent { tick, event }),
        );
        let last = track.last().map_or(0, |e| e.tick);
        track.push(TrackEvent {
            tick: last,
            event: MidiEvent::EndOfTrack,
        });
        tracks.push(track);
    }
    Ok(tracks)
}

fn program_for(channel: u8, config: &MusicConfig) -> Option<u8> {
    let c = &config.channels;
    let p = &config.programs;
    if channel == c.percussion {
        None
    } else if channel == c.melody {
        Some(p.melody)
    } else if channel == c.chords {
        Some(p.chords)
    } else if channel == c.drone {
        Some(p.drone)
    } else {
        None
    }
}

fn encode_track(track: &[TrackEvent]) -> Result<Vec<u8>, MidiError> {
    let mut body = Vec::new();
    let mut prev = 0u64;
    for ev in track {
        body.extend(encode_vlq(ev.tick - prev)?);
        body.extend(ev.event.bytes());
        prev = ev.tick;
    }
    Ok(body)
}

/// Serializes `score` as a format-1 SMF with the score's tick resolution.
pub fn write_smf(score: &Score, config: &MusicConfig) -> Result<Vec<u8>, MidiError> {
    let tracks = build_tracks(score, config)?;
    let mut out = Vec::new();
    out.extend(b"MThd");
    out.extend(6u32.to_be_bytes());
    out.extend(1u16.to_be_bytes());
    out.extend((tracks.len() as u16).to_be_bytes());
    out.extend(score.ticks_per_quarter.to_be_bytes());
    for (i, track) in tracks.iter().enumerate() {
        let body = encode_track(track)?;
        let len = u32::try_from(body.len()).map_err(|_| MidiError::TrackTooLong(i))?;
        out.extend(b"MTrk");
        out.extend(len.to_be_bytes());
        out.extend(body);
    }
    Ok(out)
}
