//! Scales and triads in a fixed tonic. Minor is the parallel natural minor,
//! so both modes share the same tonic pitch.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Major,
    Minor,
}

impl From<bool> for Mode {
    fn from(result: bool) -> Self {
        if result {
            Mode::Major
        } else {
            Mode::Minor
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Major => "major",
            Mode::Minor => "minor",
        })
    }
}

const MAJOR_STEPS: [i32; 7] = [0, 2, 4, 5, 7, 9, 11];
const MINOR_STEPS: [i32; 7] = [0, 2, 3, 5, 7, 8, 10];

impl Mode {
    fn steps(self) -> &'static [i32; 7] {
        match self {
            Mode::Major => &MAJOR_STEPS,
            Mode::Minor => &MINOR_STEPS,
        }
    }

    /// Semitone offset of a 1-based scale degree above the tonic. Degrees
    /// outside 1..=7 wrap into neighbouring octaves (8 is the octave, 0 the
    /// leading tone below).
    pub fn degree_offset(self, degree: i32) -> i32 {
        let idx = degree - 1;
        self.steps()[idx.rem_euclid(7) as usize] + 12 * idx.div_euclid(7)
    }
}

/// Roman-numeral triad on a scale degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Numeral {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl Numeral {
    pub fn degree(self) -> i32 {
        match self {
            Numeral::I => 1,
            Numeral::II => 2,
            Numeral::III => 3,
            Numeral::IV => 4,
            Numeral::V => 5,
            Numeral::VI => 6,
        }
    }

    /// Root-position triad stacked in thirds from the scale, as offsets
    /// above the tonic, lowest first.
    pub fn triad(self, mode: Mode) -> [i32; 3] {
        let d = self.degree();
        [
            mode.degree_offset(d),
            mode.degree_offset(d + 2),
            mode.degree_offset(d + 4),
        ]
    }
}

impl fmt::Display for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Numeral::I => "I",
            Numeral::II => "ii",
            Numeral::III => "iii",
            Numeral::IV => "IV",
            Numeral::V => "V",
            Numeral::VI => "vi",
        })
    }
}

/// Tonic triad of the given mode: (root, +4, +7) major or (root, +3, +7) minor.
pub fn tonic_triad(mode: Mode) -> [i32; 3] {
    Numeral::I.triad(mode)
}
