/// A scheduled note. Onsets and durations are in ticks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NoteEvent {
    pub onset: u64,
    pub pitch: u8,
    pub duration: u64,
    pub velocity: u8,
    pub channel: u8,
}

impl NoteEvent {
    pub fn end(&self) -> u64 {
        self.onset + self.duration
    }

    pub fn shifted(mut self, by: u64) -> Self {
        self.onset += by;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Score {
    pub notes: Vec<NoteEvent>,
    pub ticks_per_quarter: u16,
    /// Quarter notes per minute.
    pub tempo: u32,
    /// Total length in ticks; never shorter than the last note end.
    pub length: u64,
}

impl Score {
    pub fn empty(ticks_per_quarter: u16, tempo: u32) -> Self {
        Score {
            notes: Vec::new(),
            ticks_per_quarter,
            tempo,
            length: 0,
        }
    }

    pub fn notes_on(&self, channel: u8) -> impl Iterator<Item = &NoteEvent> {
        self.notes.iter().filter(move |n| n.channel == channel)
    }
}

/// A rendered motif with onsets relative to its start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Motif {
    pub notes: Vec<NoteEvent>,
    /// Ticks the motif occupies on the timeline, including rests.
    pub length: u64,
}

impl Motif {
    pub fn empty() -> Self {
        Motif {
            notes: Vec::new(),
            length: 0,
        }
    }

    pub fn pitches(&self) -> Vec<u8> {
        self.notes.iter().map(|n| n.pitch).collect()
    }
}
