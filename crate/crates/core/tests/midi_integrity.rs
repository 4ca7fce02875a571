mod common;

use auralize_core::config::MusicConfig;
use auralize_core::midi::{encode_vlq, normalize_notes, write_smf};
use auralize_core::music::{NoteEvent, Score};
use common::smf::{parse_smf, read_varlen, ParsedNote};
use proptest::prelude::*;

fn as_parsed(notes: &[NoteEvent]) -> Vec<ParsedNote> {
    let mut v: Vec<ParsedNote> = notes
        .iter()
        .map(|n| ParsedNote {
            onset: n.onset,
            channel: n.channel,
            pitch: n.pitch,
            duration: n.duration,
            velocity: n.velocity,
        })
        .collect();
    v.sort();
    v
}

#[test]
fn vlq_exhaustive_to_2_pow_20() {
    for v in 0u64..(1 << 20) {
        let bytes = encode_vlq(v).unwrap();
        let minimal = match v {
            0..=0x7F => 1,
            0x80..=0x3FFF => 2,
            _ => 3,
        };
        assert_eq!(bytes.len(), minimal, "{v}");
        assert_eq!(read_varlen(&bytes).unwrap(), (v, minimal), "{v}");
    }
}

#[test]
fn vlq_top_of_range() {
    for v in [(1u64 << 21) - 1, 1 << 21, (1 << 28) - 1] {
        assert_eq!(read_varlen(&encode_vlq(v).unwrap()).unwrap().0, v);
    }
    assert!(encode_vlq(1 << 28).is_err());
}

fn note_strategy() -> impl Strategy<Value = NoteEvent> {
    (0u64..20_000, 0u8..=127, 1u64..3000, 1u8..=127, 0u8..16).prop_map(
        |(onset, pitch, duration, velocity, channel)| NoteEvent {
            onset,
            pitch,
            duration,
            velocity,
            channel,
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn arbitrary_scores_round_trip(notes in prop::collection::vec(note_strategy(), 0..60), tempo in 4u32..400) {
        let score = Score { notes, ticks_per_quarter: 480, tempo, length: 0 };
        let bytes = write_smf(&score, &MusicConfig::default()).unwrap();
        let parsed = parse_smf(&bytes).unwrap();
        prop_assert_eq!(parsed.format, 1);
        prop_assert_eq!(parsed.division, 480);
        prop_assert_eq!(parsed.tempos.clone(), vec![(0, 60_000_000 / tempo)]);
        prop_assert_eq!(parsed.note_ons.clone(), parsed.note_offs.clone());
        prop_assert_eq!(parsed.notes.clone(), as_parsed(&normalize_notes(&score.notes)));
        // one track per used channel, each holding a single channel
        let used: std::collections::BTreeSet<u8> = normalize_notes(&score.notes).iter().map(|n| n.channel).collect();
        prop_assert_eq!(parsed.tracks, used.len() + 1);
        prop_assert!(parsed.track_channels[1..].iter().all(|c| c.len() == 1));
        prop_assert_eq!(write_smf(&score, &MusicConfig::default()).unwrap(), bytes);
    }

    #[test]
    fn disjoint_scores_round_trip_exactly(gaps in prop::collection::vec((0u64..500, 1u64..500, 0u8..=127), 1..40)) {
        let mut t = 0;
        let notes: Vec<NoteEvent> = gaps.iter().map(|&(gap, dur, pitch)| {
            t += gap;
            let n = NoteEvent { onset: t, pitch, duration: dur, velocity: 90, channel: 3 };
            t += dur;
            n
        }).collect();
        let score = Score { notes: notes.clone(), ticks_per_quarter: 96, tempo: 120, length: t };
        let parsed = parse_smf(&write_smf(&score, &MusicConfig::default()).unwrap()).unwrap();
        prop_assert_eq!(parsed.notes, as_parsed(&notes));
    }

    #[test]
    fn generated_programs_emit_valid_files(seed in any::<u64>()) {
        let g = common::gen::Generator::new(seed, 3).program();
        let a = common::auralize(&g.source(), &[]);
        let parsed = parse_smf(&a.smf).unwrap();
        prop_assert_eq!(parsed.note_ons.clone(), parsed.note_offs.clone());
        prop_assert_eq!(parsed.notes, as_parsed(&normalize_notes(&a.rendering.score.notes)));
        prop_assert_eq!(common::auralize(&g.source(), &[]).smf, a.smf);
    }
}

/// Motifs are laid end to end, so only overlapping drones of nested loops
/// can collide on a pitch; every other note reaches the file untouched.
#[test]
fn normalization_only_touches_drones() {
    let drone = MusicConfig::default().channels.drone;
    for i in 0..300 {
        let a = common::auralize(&common::gen::generated(i).source(), &[]);
        let keep = |v: &[NoteEvent]| {
            let mut v: Vec<NoteEvent> = v.iter().copied().filter(|n| n.channel != drone).collect();
            v.sort();
            v
        };
        let original = &a.rendering.score.notes;
        assert_eq!(
            keep(&normalize_notes(original)),
            keep(original),
            "program {i}"
        );
    }
}

#[test]
fn null_while_file_note_count() {
    let a = common::auralize(common::NULL_WHILE, &[]);
    let parsed = parse_smf(&a.smf).unwrap();
    // entry I (3) + condition triad (3) + exit V-I (6)
    assert_eq!(parsed.notes.len(), 3 + 3 + 6);
    assert_eq!(&a.smf[..10], &[0x4D, 0x54, 0x68, 0x64, 0, 0, 0, 6, 0, 1]);
}
