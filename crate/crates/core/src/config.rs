//! Rendering configuration and its flat `key = value` file format.
//!
//! ```text
//! # comments and blank lines are ignored
//! tempo = 90
//! key_root = 62
//! classes = selection
//! max_iters = 3
//! ```
//!
//! Every key is optional. Values are merged as defaults, then the file, then
//! explicit overrides; the merged result is range-checked as a whole.

use std::collections::BTreeSet;
use std::path::Path;

use thiserror::Error;

use crate::frontend::{ConstructClass, ConstructKind};
use crate::interp::ExecLimits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Channels {
    pub melody: u8,
    pub chords: u8,
    pub drone: u8,
    pub percussion: u8,
}

/// General MIDI program numbers for the pitched channels. The percussion
/// channel always plays the GM drum kit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Programs {
    pub melody: u8,
    pub chords: u8,
    pub drone: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filters {
    pub classes: BTreeSet<ConstructClass>,
    pub kinds: BTreeSet<ConstructKind>,
    pub max_depth: Option<u32>,
    pub max_iterations: Option<u64>,
}

impl Default for Filters {
    fn default() -> Self {
        Filters {
            classes: ConstructClass::ALL.into_iter().collect(),
            kinds: ConstructKind::ALL.into_iter().collect(),
            max_depth: None,
            max_iterations: None,
        }
    }
}

impl Filters {
    pub fn enables(&self, kind: ConstructKind) -> bool {
        self.classes.contains(&kind.class()) && self.kinds.contains(&kind)
    }

    pub fn is_identity(&self) -> bool {
        *self == Filters::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MusicConfig {
    /// MIDI note of the tonic.
    pub key_root: u8,
    /// Quarter notes per minute.
    pub tempo: u32,
    pub ticks_per_quarter: u16,
    pub melody_octave: i8,
    pub chord_octave: i8,
    pub drone_octave: i8,
    /// Semitones added per nesting level.
    pub depth_step: u8,
    /// Nesting levels beyond this are not transposed further.
    pub depth_cap: u32,
    pub channels: Channels,
    pub programs: Programs,
    pub percussion_key: u8,
    pub filters: Filters,
    pub limits: ExecLimits,
}

impl Default for MusicConfig {
    fn default() -> Self {
        MusicConfig {
            key_root: 60,
            tempo: 120,
            ticks_per_quarter: 480,
            melody_octave: 0,
            chord_octave: 0,
            drone_octave: -1,
            depth_step: 12,
            depth_cap: 5,
            channels: Channels {
                melody: 0,
                chords: 1,
                drone: 2,
                percussion: 9,
            },
            programs: Programs {
                melody: 0,
                chords: 48,
                drone: 19,
            },
            percussion_key: 76,
            filters: Filters::default(),
            limits: ExecLimits::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("config value for '{key}' out of range: {message}")]
    Range { key: &'static str, message: String },
}

/// Command-line style overrides; `None` leaves the lower layer untouched.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub tempo: Option<u32>,
    pub key_root: Option<u8>,
    pub classes: Option<Vec<ConstructClass>>,
    pub kinds: Option<Vec<ConstructKind>>,
    pub max_depth: Option<u32>,
    pub max_iterations: Option<u64>,
    pub max_events: Option<usize>,
    pub max_steps: Option<u64>,
}

pub fn load_config(path: Option<&Path>, overrides: &Overrides) -> Result<MusicConfig, ConfigError> {
    let mut config = MusicConfig::default();
    if let Some(path) = path {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        apply_config_text(&mut config, &text)?;
    }
    apply_overrides(&mut config, overrides);
    validate(&config)?;
    Ok(config)
}

/// Parses config text on top of the defaults and validates the result.
pub fn parse_config(text: &str) -> Result<MusicConfig, ConfigError> {
    let mut config = MusicConfig::default();
    apply_config_text(&mut config, text)?;
    validate(&config)?;
    Ok(config)
}

fn apply_overrides(config: &mut MusicConfig, o: &Overrides) {
    if let Some(v) = o.tempo {
        config.tempo = v;
    }
    if let Some(v) = o.key_root {
        config.key_root = v;
    }
    if let Some(v) = &o.classes {
        config.filters.classes = v.iter().copied().collect();
    }
    if let Some(v) = &o.kinds {
        config.filters.kinds = v.iter().copied().collect();
    }
    if let Some(v) = o.max_depth {
        config.filters.max_depth = Some(v);
    }
    if let Some(v) = o.max_iterations {
        config.filters.max_iterations = Some(v);
    }
    if let Some(v) = o.max_events {
        config.limits.max_events = v;
    }
    if let Some(v) = o.max_steps {
        config.limits.max_steps = v;
    }
}

fn apply_config_text(config: &mut MusicConfig, text: &str) -> Result<(), ConfigError> {
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Parse {
                line,
                message: format!("expected 'key = value', found '{content}'"),
            });
        };
        set_key(config, key.trim(), value.trim())
            .map_err(|message| ConfigError::Parse { line, message })?;
    }
    Ok(())
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("'{key}' expects an integer in range, found '{value}'"))
}

fn optional<T: std::str::FromStr>(key: &str, value: &str) -> Result<Option<T>, String> {
    if value.eq_ignore_ascii_case("none") {
        Ok(None)
    } else {
        num(key, value).map(Some)
    }
}

fn list<T: std::str::FromStr<Err = String> + Ord>(value: &str) -> Result<BTreeSet<T>, String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

fn set_key(c: &mut MusicConfig, key: &str, value: &str) -> Result<(), String> {
    match key {
        "key_root" => c.key_root = num(key, value)?,
        "tempo" => c.tempo = num(key, value)?,
        "ticks_per_quarter" => c.ticks_per_quarter = num(key, value)?,
        "melody_octave" => c.melody_octave = num(key, value)?,
        "chord_octave" => c.chord_octave = num(key, value)?,
        "drone_octave" => c.drone_octave = num(key, value)?,
        "depth_step" => c.depth_step = num(key, value)?,
        "depth_cap" => c.depth_cap = num(key, value)?,
        "melody_channel" => c.channels.melody = num(key, value)?,
        "chord_channel" => c.channels.chords = num(key, value)?,
        "drone_channel" => c.channels.drone = num(key, value)?,
        "percussion_channel" => c.channels.percussion = num(key, value)?,
        "melody_program" => c.programs.melody = num(key, value)?,
        "chord_program" => c.programs.chords = num(key, value)?,
        "drone_program" => c.programs.drone = num(key, value)?,
        "percussion_key" => c.percussion_key = num(key, value)?,
        "classes" => c.filters.classes = list(value)?,
        "kinds" => c.filters.kinds = list(value)?,
        "max_depth" => c.filters.max_depth = optional(key, value)?,
        "max_iters" => c.filters.max_iterations = optional(key, value)?,
        "max_events" => c.limits.max_events = num(key, value)?,
        "max_steps" => c.limits.max_steps = num(key, value)?,
        other => return Err(format!("unknown key '{other}'")),
    }
    Ok(())
}

fn range(key: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError::Range {
        key,
        message: message.into(),
    }
}

pub fn validate(c: &MusicConfig) -> Result<(), ConfigError> {
    if c.key_root > 127 {
        return Err(range("key_root", "must be a MIDI note 0..=127"));
    }
    // The SMF tempo meta event stores microseconds per quarter in 24 bits.
    if !(4..=60_000_000).contains(&c.tempo) {
        return Err(range(
            "tempo",
            "must be between 4 and 60000000 beats per minute",
        ));
    }
    if c.ticks_per_quarter == 0
        || c.ticks_per_quarter > 0x7FFF
        || !c.ticks_per_quarter.is_multiple_of(4)
    {
        return Err(range(
            "ticks_per_quarter",
            "must be a positive multiple of 4 no greater than 32764",
        ));
    }
    for (key, v) in [
        ("melody_octave", c.melody_octave),
        ("chord_octave", c.chord_octave),
        ("drone_octave", c.drone_octave),
    ] {
        if !(-5..=5).contains(&v) {
            return Err(range(key, "must be between -5 and 5"));
        }
    }
    if c.depth_step > 24 {
        return Err(range("depth_step", "must be at most 24 semitones"));
    }
    if c.depth_cap > 10 {
        return Err(range("depth_cap", "must be at most 10"));
    }
    let ch = c.channels;
    for (key, v) in [
        ("melody_channel", ch.melody),
        ("chord_channel", ch.chords),
        ("drone_channel", ch.drone),
        ("percussion_channel", ch.percussion),
    ] {
        if v > 15 {
            return Err(range(key, "must be a MIDI channel 0..=15"));
        }
    }
    let distinct: BTreeSet<u8> = [ch.melody, ch.chords, ch.drone, ch.percussion].into();
    if distinct.len() != 4 {
        return Err(range(
            "channels",
            "melody, chord, drone and percussion channels must differ",
        ));
    }
    for (key, v) in [
        ("melody_program", c.programs.melody),
        ("chord_program", c.programs.chords),
        ("drone_program", c.programs.drone),
    ] {
        if v > 127 {
            return Err(range(key, "must be a General MIDI program 0..=127"));
        }
    }
    if c.percussion_key > 127 {
        return Err(range("percussion_key", "must be a MIDI note 0..=127"));
    }
    if c.limits.max_events == 0 {
        return Err(range("max_events", "must be positive"));
    }
    if c.limits.max_steps == 0 {
        return Err(range("max_steps", "must be positive"));
    }
    if c.filters.max_iterations == Some(0) {
        return Err(range("max_iters", "must be positive"));
    }
    Ok(())
}
