//! Property tests for the pitch-space algebra and the process contract.

mod support;

use proptest::prelude::*;
use support::{inject_ornament_mutations, Rng};
use tintinnabuli::evaluate::{self, ErrorKind};
use tintinnabuli::process::{
    rotate, tail_rotation, OrnamentBounds, ProcessKind, RotationDirection, Seed,
    TintinnabuliProcess,
};
use tintinnabuli::space::{Melody, PitchSpace, Scale};
use tintinnabuli::summa::{self, SummaConfig};
use tintinnabuli::Pitch;

fn m_space() -> PitchSpace {
    PitchSpace::generate(Scale::parse(&["E4", "F#4", "G4", "A4", "B4", "C5", "D5"]).unwrap())
        .unwrap()
}

fn t_space() -> PitchSpace {
    PitchSpace::generate(Scale::parse(&["E4", "G4", "B4"]).unwrap()).unwrap()
}

/// A melody over the middle of the melodic space, built from a start degree
/// and bounded steps so it never leaves the gamut.
fn melody_from_walk(space: &PitchSpace, start: usize, steps: &[i8]) -> Melody {
    let mid = space.members().len() / 2;
    let mut degree = (mid - 8 + start % 16) as i64;
    let mut notes = vec![space.members()[degree as usize]];
    for s in steps {
        degree = (degree + *s as i64).clamp(8, space.members().len() as i64 - 8);
        notes.push(space.members()[degree as usize]);
    }
    Melody::new(space.clone(), notes).unwrap()
}

proptest! {
    #[test]
    fn transpose_round_trips(start in 0usize..16, d in -20i64..20) {
        let m = m_space();
        let mid = m.members().len() / 2;
        let pitch = m.members()[mid - 8 + start];
        if let Ok(moved) = m.transpose(pitch, d) {
            prop_assert_eq!(m.transpose(moved, -d).unwrap(), pitch);
            // degrees shift by exactly d
            let a = m.degree(pitch).unwrap() as i64;
            let b = m.degree(moved).unwrap() as i64;
            prop_assert_eq!(b - a, d);
        }
    }

    #[test]
    fn mirror_is_an_involution_preserving_distance(a in 0usize..16, c in 0usize..16) {
        let m = m_space();
        let mid = m.members().len() / 2;
        let pitch = m.members()[mid - 8 + a];
        let center = m.members()[mid - 8 + c];
        let mirrored = m.mirror(pitch, center).unwrap();
        prop_assert_eq!(m.mirror(mirrored, center).unwrap(), pitch);
        let d1 = m.degree(pitch).unwrap() as i64 - m.degree(center).unwrap() as i64;
        let d2 = m.degree(mirrored).unwrap() as i64 - m.degree(center).unwrap() as i64;
        prop_assert_eq!(d1, -d2);
    }

    #[test]
    fn rotation_preserves_the_multiset_and_cycles(xs in prop::collection::vec(0u8..10, 1..24), d in 0usize..40) {
        for dir in [RotationDirection::Left, RotationDirection::Right] {
            let rotated = rotate(&xs, d, dir);
            prop_assert_eq!(rotated.len(), xs.len());
            let mut a = xs.clone();
            let mut b = rotated.clone();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
            // rotating the remainder of the cycle restores the input
            let n = xs.len();
            let back = rotate(&rotated, (n - d % n) % n, dir);
            prop_assert_eq!(back, xs.clone());
        }
    }

    #[test]
    fn tail_rotation_fixes_the_head(xs in prop::collection::vec(0u8..10, 2..24), d in 0usize..40) {
        let rotated = tail_rotation(&xs, d, RotationDirection::Left).unwrap();
        prop_assert_eq!(rotated[0], xs[0]);
        let mut a = xs.clone();
        let mut b = rotated.clone();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn processes_keep_length_and_replay_from_any_prefix(
        start in 0usize..16,
        steps in prop::collection::vec(-1i8..=1, 0..12),
        pos in 1i64..3,
    ) {
        let m = m_space();
        let t = t_space();
        let melody = melody_from_walk(&m, start, &steps);
        for kind in [
            ProcessKind::Constant { position: pos },
            ProcessKind::Alternate { start_position: pos },
            ProcessKind::Step { position: pos, descending_lookahead: false },
        ] {
            let proc = TintinnabuliProcess::new(t.clone(), kind).unwrap();
            let out = proc.run(&melody, None).unwrap().into_melody().unwrap();
            prop_assert_eq!(out.len(), melody.len());
            // causality: replaying any suffix from its seed reproduces it
            for split in 1..melody.len() {
                let suffix = Melody::new(m.clone(), melody.notes()[split - 1..].to_vec()).unwrap();
                let replay = proc
                    .run(&suffix, Some(Seed::Note(out.notes()[split - 1])))
                    .unwrap()
                    .into_melody()
                    .unwrap();
                prop_assert_eq!(&out.notes()[split - 1..], replay.notes());
            }
        }
    }

    #[test]
    fn step_output_moves_to_neighbors_only(
        start in 0usize..16,
        steps in prop::collection::vec(-1i8..=1, 1..16),
    ) {
        let m = m_space();
        let t = t_space();
        let melody = melody_from_walk(&m, start, &steps);
        let proc = TintinnabuliProcess::new(
            t.clone(),
            ProcessKind::Step { position: 2, descending_lookahead: false },
        )
        .unwrap();
        let out = proc.run(&melody, None).unwrap().into_melody().unwrap();
        for w in out.notes().windows(2) {
            let d = t.degree(w[1]).unwrap() as i64 - t.degree(w[0]).unwrap() as i64;
            prop_assert_eq!(d.abs(), 1, "no repetitions, no leaps");
        }
    }

    #[test]
    fn repeat_previous_is_silent_at_the_endpoints(
        start in 0usize..16,
        steps in prop::collection::vec(-2i8..=2, 1..16),
    ) {
        let m = m_space();
        let melody = melody_from_walk(&m, start, &steps);
        let proc = TintinnabuliProcess::new(
            m.clone(),
            ProcessKind::RepeatPrevious { bounds: OrnamentBounds::default() },
        )
        .unwrap();
        let out = proc.run(&melody, None).unwrap().into_ornaments().unwrap();
        prop_assert_eq!(out.get(0), None);
        prop_assert_eq!(out.get(out.len() - 1), None);
        for i in 1..melody.len().saturating_sub(1) {
            let expect = if melody.notes()[i + 1] != melody.notes()[i - 1] {
                Some(melody.notes()[i - 1])
            } else {
                None
            };
            prop_assert_eq!(out.get(i), expect);
        }
    }

    #[test]
    fn pattern_process_first_block_is_the_pattern(
        slots in prop::collection::vec(prop::option::weighted(0.3, 0usize..4), 2..16),
        melody_len in 2usize..64,
    ) {
        let t = t_space();
        let names = ["E3", "G3", "B3", "E4"];
        let pattern: Vec<Option<Pitch>> = slots
            .iter()
            .map(|s| s.map(|i| names[i].parse().unwrap()))
            .collect();
        let proc = TintinnabuliProcess::new(
            t.clone(),
            ProcessKind::TailRotatedPattern { pattern: pattern.clone(), direction: RotationDirection::Left },
        )
        .unwrap();
        let notes = vec!["E4".parse().unwrap(); melody_len];
        let melody = Melody::new(t.clone(), notes).unwrap();
        let out = proc.run(&melody, None).unwrap().into_ornaments().unwrap();
        let first_block = melody_len.min(pattern.len());
        prop_assert_eq!(&out.entries()[..first_block], &pattern[..first_block]);
    }
}

#[test]
fn insertions_and_deletions_are_symmetric() {
    let base = summa::assemble(&SummaConfig::default()).unwrap();
    let mut rng = Rng(0x5e11_ab1e);
    let (mutated, _) = inject_ornament_mutations(&base, 12, &mut rng);
    let forward = evaluate::evaluate(&mutated, &base).unwrap();
    let backward = evaluate::evaluate(&base, &mutated).unwrap();
    let slots = |report: &evaluate::ErrorReport, kind: ErrorKind| -> Vec<(u32, usize)> {
        report
            .records
            .iter()
            .filter(|r| r.kind == kind)
            .map(|r| (r.bar, r.index))
            .collect()
    };
    assert_eq!(
        slots(&forward, ErrorKind::OrnamentInsertion),
        slots(&backward, ErrorKind::OrnamentDeletion)
    );
    assert_eq!(
        slots(&forward, ErrorKind::OrnamentDeletion),
        slots(&backward, ErrorKind::OrnamentInsertion)
    );
}
