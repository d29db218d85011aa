//! Shared helpers for the integration suites: a tiny deterministic RNG,
//! randomized-but-valid generator configurations, and ornament mutations.
#![allow(dead_code)] // each test binary uses its own subset

use tintinnabuli::plan::{Voice, ALL_VOICES};
use tintinnabuli::score::{Note, Score};
use tintinnabuli::summa::{rederive_rhythm, SummaConfig};
use tintinnabuli::RotationDirection;

/// splitmix64; good enough to spread test cases, fully reproducible.
pub struct Rng(pub u64);

impl Rng {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }

    pub fn chance(&mut self, percent: u64) -> bool {
        self.next() % 100 < percent
    }
}

/// A random configuration the generator accepts: rotation, transposition,
/// positions, strip flag and ornament patterns all vary.
pub fn random_config(rng: &mut Rng) -> SummaConfig {
    let mut cfg = SummaConfig {
        bass_transposition: if rng.chance(50) { -7 } else { -6 },
        rotation_direction: if rng.chance(50) {
            RotationDirection::Left
        } else {
            RotationDirection::Right
        },
        strip_ornamented_exits: rng.chance(50),
        drop_last_pattern_note: rng.chance(10),
        soprano_position: if rng.chance(80) { 2 } else { 3 },
        tenor_position: if rng.chance(80) { 1 } else { 2 },
        ..SummaConfig::default()
    };
    let ornament_pitches = ["E3", "G3", "B3", "E4"];
    for pattern in [&mut cfg.alto_ornament_pattern, &mut cfg.bass_ornament_pattern] {
        pattern.clear();
        pattern.push(None);
        for _ in 1..16 {
            if rng.chance(25) {
                pattern.push(Some(ornament_pitches[rng.below(4)].to_string()));
            } else {
                pattern.push(None);
            }
        }
    }
    cfg
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    Insertion,
    Deletion,
}

/// Toggle ornaments on `k` distinct slots and re-derive the rhythm. Returns
/// the mutated score and the (voice, bar, index, kind) of every mutation.
pub fn inject_ornament_mutations(
    score: &Score,
    k: usize,
    rng: &mut Rng,
) -> (Score, Vec<(Voice, u32, usize, Mutation)>) {
    let mut mutated = score.clone();
    let mut applied = Vec::new();
    let mut used: Vec<(Voice, u32, usize)> = Vec::new();
    let triad = ["E3", "G3", "B3", "E4", "G4", "B4"];
    let mut guard = 0;
    while applied.len() < k {
        guard += 1;
        assert!(guard < 10_000, "could not place {k} mutations");
        let voice = ALL_VOICES[rng.below(4)];
        let want_insertion = rng.chance(50);
        let candidates: Vec<usize> = mutated
            .part(voice)
            .cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.ornament.is_some() != want_insertion)
            .filter(|(_, c)| !used.contains(&(voice, c.bar, c.index)))
            .map(|(i, _)| i)
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let at = candidates[rng.below(candidates.len())];
        let pitch: tintinnabuli::Pitch = triad[rng.below(triad.len())].parse().unwrap();
        let part = mutated.part_mut(voice);
        let cell = &mut part.cells[at];
        used.push((voice, cell.bar, cell.index));
        if want_insertion {
            cell.ornament = Some(Note { pitch, duration: cell.main.duration });
            cell.slur = true;
            applied.push((voice, cell.bar, cell.index, Mutation::Insertion));
        } else {
            cell.ornament = None;
            cell.slur = false;
            applied.push((voice, cell.bar, cell.index, Mutation::Deletion));
        }
    }
    rederive_rhythm(&mut mutated).unwrap();
    (mutated, applied)
}
