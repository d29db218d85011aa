//! Tintinnabuli positions and processes.
//!
//! A tintinnabuli process maps a melody to a sequence of triad-space entries
//! of the same length. Entry `i` may depend on the whole melody but only on
//! *earlier* output entries, so a process can always be replayed
//! deterministically from any prefix.
//!
//! Five processes are provided: `constant` and `alternate` (position-based),
//! `step` (the neighbor-move process), and the two ornament processes
//! `repeat-previous` and `tail-rotated-pattern`, whose entries may be silent.

use crate::error::{Error, Result};
use crate::pitch::Pitch;
use crate::space::{Melody, PitchSpace};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RotationDirection {
    #[default]
    Left,
    Right,
}

impl std::fmt::Display for RotationDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RotationDirection::Left => "left",
            RotationDirection::Right => "right",
        })
    }
}

/// Cyclic rotation by `d` places. `d` is taken modulo the length.
pub fn rotate<T: Clone>(seq: &[T], d: usize, direction: RotationDirection) -> Vec<T> {
    if seq.is_empty() {
        return Vec::new();
    }
    let n = seq.len();
    let shift = match direction {
        RotationDirection::Left => d % n,
        RotationDirection::Right => (n - d % n) % n,
    };
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&seq[shift..]);
    out.extend_from_slice(&seq[..shift]);
    out
}

/// Rotation that leaves the first element fixed and rotates the remainder.
pub fn tail_rotation<T: Clone>(seq: &[T], d: usize, direction: RotationDirection) -> Result<Vec<T>> {
    if seq.len() < 2 {
        return Err(Error::Validation(format!(
            "tail rotation needs at least two elements, got {}",
            seq.len()
        )));
    }
    let mut out = Vec::with_capacity(seq.len());
    out.push(seq[0].clone());
    out.extend(rotate(&seq[1..], d, direction));
    Ok(out)
}

/// The four stepwise melodic motions: away from a central pitch (ascending
/// or descending, starting on it) and toward it (descending or ascending,
/// ending on it).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MelodicMode {
    AscendingFrom,
    DescendingFrom,
    DescendingToward,
    AscendingToward,
}

impl MelodicMode {
    pub fn from_number(n: u8) -> Result<MelodicMode> {
        match n {
            1 => Ok(MelodicMode::AscendingFrom),
            2 => Ok(MelodicMode::DescendingFrom),
            3 => Ok(MelodicMode::DescendingToward),
            4 => Ok(MelodicMode::AscendingToward),
            _ => Err(Error::Validation(format!("melodic mode must be 1..=4, got {n}"))),
        }
    }
}

/// Stepwise line of `length` notes in one of the four melodic modes.
pub fn mode(space: &PitchSpace, kind: MelodicMode, length: usize, center: Pitch) -> Result<Melody> {
    if length == 0 {
        return Err(Error::Validation("mode length must be at least 1".into()));
    }
    let steps: Vec<i64> = match kind {
        MelodicMode::AscendingFrom => (0..length as i64).collect(),
        MelodicMode::DescendingFrom => (0..length as i64).map(|i| -i).collect(),
        MelodicMode::DescendingToward => (0..length as i64).map(|i| length as i64 - 1 - i).collect(),
        MelodicMode::AscendingToward => (0..length as i64).map(|i| i - (length as i64 - 1)).collect(),
    };
    let notes = steps
        .into_iter()
        .map(|d| space.transpose(center, d))
        .collect::<Result<Vec<Pitch>>>()?;
    Melody::new(space.clone(), notes)
}

/// The pitch in position `p` relative to `n` within `t_space`.
///
/// Positive positions count members strictly above `n`; position 0 is `n`
/// itself. Negative positions count downward from the highest member at or
/// below `n`, so for a non-member the first position below skips past the
/// member it sits between (T_-1 of A3 over an E minor triad is E3, not G3).
pub fn t_position(t_space: &PitchSpace, n: Pitch, p: i64) -> Result<Pitch> {
    if p == 0 {
        return Ok(n);
    }
    // Index of the highest member <= n, or -1 when n lies below all members.
    let base = t_space.floor_degree(n).map(|d| d as i64).unwrap_or(-1);
    let target = base + p;
    if target < 0 || target >= t_space.members().len() as i64 {
        return Err(Error::Range(format!(
            "position {p} from {n} leaves the gamut of {}",
            t_space.generator()
        )));
    }
    Ok(t_space.members()[target as usize])
}

/// The position `p` with `t_position(t_space, m, p) == t`; inverse of
/// [`t_position`] for fixed `m`.
pub fn position_of(t_space: &PitchSpace, m: Pitch, t: Pitch) -> Result<i64> {
    let ti = t_space.degree(t)? as i64;
    let base = t_space.floor_degree(m).map(|d| d as i64).unwrap_or(-1);
    let p = ti - base;
    if p == 0 && t != m {
        return Err(Error::Membership(format!(
            "no integer position maps {m} to {t} in {}",
            t_space.generator()
        )));
    }
    Ok(p)
}

/// A silent-or-sounding entry of an ornament track.
pub type OrnamentEntry = Option<Pitch>;

/// Ornament entries aligned one-to-one with the melody they decorate.
/// Every sounding entry lies in the triad space the track was built over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrnamentTrack {
    entries: Vec<OrnamentEntry>,
}

impl OrnamentTrack {
    pub fn new(t_space: &PitchSpace, entries: Vec<OrnamentEntry>) -> Result<OrnamentTrack> {
        for e in entries.iter().flatten() {
            if !t_space.contains(*e) {
                return Err(Error::Membership(format!(
                    "ornament {e} is not a member of {}",
                    t_space.generator()
                )));
            }
        }
        Ok(OrnamentTrack { entries })
    }

    pub fn silent(len: usize) -> OrnamentTrack {
        OrnamentTrack { entries: vec![None; len] }
    }

    pub fn entries(&self) -> &[OrnamentEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> OrnamentEntry {
        self.entries.get(i).copied().flatten()
    }

    pub fn set(&mut self, i: usize, e: OrnamentEntry) {
        self.entries[i] = e;
    }

    pub fn sounding(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }
}

/// Seed value for the first output entry of a process run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seed {
    Silent,
    Note(Pitch),
}

/// Inclusive bounds of the repeat-previous ornament rule: the repeated note
/// must lie within [note_low, note_high] and the following melody note
/// within [next_low, next_high]. Missing bounds are unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OrnamentBounds {
    #[serde(default)]
    pub note_low: Option<Pitch>,
    #[serde(default)]
    pub note_high: Option<Pitch>,
    #[serde(default)]
    pub next_low: Option<Pitch>,
    #[serde(default)]
    pub next_high: Option<Pitch>,
}

impl OrnamentBounds {
    fn admits(&self, note: Pitch, next: Pitch) -> bool {
        self.note_low.is_none_or(|b| b <= note)
            && self.note_high.is_none_or(|b| note <= b)
            && self.next_low.is_none_or(|b| b <= next)
            && self.next_high.is_none_or(|b| next <= b)
    }
}

/// Kind-specific rule of a tintinnabuli process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProcessKind {
    /// Always the same position relative to the current melody note.
    Constant { position: i64 },
    /// Flips the sign of the previous note's position at every step.
    Alternate { start_position: i64 },
    /// Moves to a neighboring member while staying at least `position`
    /// members away from the melody. With `descending_lookahead` the
    /// descending variant (position < 0) tests against the *next* melody
    /// note instead of the current one.
    Step { position: i64, descending_lookahead: bool },
    /// Repeats the previous melody note when it differs from the next one,
    /// within bounds.
    RepeatPrevious { bounds: OrnamentBounds },
    /// Cycles a fixed pattern, tail-rotating it after every pass.
    TailRotatedPattern {
        pattern: Vec<OrnamentEntry>,
        direction: RotationDirection,
    },
}

/// A sequential rule mapping melodies into a triad space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TintinnabuliProcess {
    t_space: PitchSpace,
    kind: ProcessKind,
}

/// Output of a process run: pitch-valued kinds yield a melody over the triad
/// space, ornament kinds a track that may contain silences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProcessOutput {
    Melody(Melody),
    Ornaments(OrnamentTrack),
}

impl ProcessOutput {
    pub fn into_melody(self) -> Result<Melody> {
        match self {
            ProcessOutput::Melody(m) => Ok(m),
            ProcessOutput::Ornaments(_) => {
                Err(Error::Validation("process produced an ornament track, not a melody".into()))
            }
        }
    }

    pub fn into_ornaments(self) -> Result<OrnamentTrack> {
        match self {
            ProcessOutput::Ornaments(t) => Ok(t),
            ProcessOutput::Melody(_) => {
                Err(Error::Validation("process produced a melody, not an ornament track".into()))
            }
        }
    }
}

impl TintinnabuliProcess {
    pub fn new(t_space: PitchSpace, kind: ProcessKind) -> Result<TintinnabuliProcess> {
        TintinnabuliProcess::with_zero_position(t_space, kind, false)
    }

    /// `allow_zero_position` opts in to position 0 for the constant and step
    /// kinds, which is rejected by default.
    pub fn with_zero_position(
        t_space: PitchSpace,
        kind: ProcessKind,
        allow_zero_position: bool,
    ) -> Result<TintinnabuliProcess> {
        match &kind {
            ProcessKind::Constant { position } | ProcessKind::Step { position, .. } => {
                if *position == 0 && !allow_zero_position {
                    return Err(Error::Config(
                        "position 0 is rejected for constant/step processes; enable allow_zero_position to permit it".into(),
                    ));
                }
            }
            ProcessKind::TailRotatedPattern { pattern, .. } => {
                if pattern.is_empty() {
                    return Err(Error::Config("ornament pattern must not be empty".into()));
                }
                for p in pattern.iter().flatten() {
                    if !t_space.contains(*p) {
                        return Err(Error::Config(format!(
                            "pattern pitch {p} is not a member of {}",
                            t_space.generator()
                        )));
                    }
                }
            }
            ProcessKind::Alternate { .. } | ProcessKind::RepeatPrevious { .. } => {}
        }
        Ok(TintinnabuliProcess { t_space, kind })
    }

    pub fn t_space(&self) -> &PitchSpace {
        &self.t_space
    }

    pub fn kind(&self) -> &ProcessKind {
        &self.kind
    }

    /// Run the process over a melody. `seed` overrides the first output
    /// entry; when omitted each kind supplies its own default (the constant,
    /// alternate and step kinds start at their configured position of the
    /// first melody note, repeat-previous starts silent, the pattern kind
    /// starts at the head of its pattern).
    pub fn run(&self, melody: &Melody, seed: Option<Seed>) -> Result<ProcessOutput> {
        if melody.is_empty() {
            return Err(Error::Validation("cannot run a process over an empty melody".into()));
        }
        if let Some(Seed::Note(t)) = seed {
            if !self.t_space.contains(t) {
                return Err(Error::Config(format!(
                    "seed {t} is not a member of {}",
                    self.t_space.generator()
                )));
            }
        }
        let notes = melody.notes();
        match &self.kind {
            ProcessKind::Constant { position } => {
                let first = match seed {
                    Some(Seed::Note(t)) => t,
                    Some(Seed::Silent) => {
                        return Err(Error::Config("a silent seed is not valid for a pitch-valued process".into()))
                    }
                    None => t_position(&self.t_space, notes[0], *position)?,
                };
                let mut out = vec![first];
                for m in &notes[1..] {
                    out.push(constant_rule(&self.t_space, *position, *m)?);
                }
                if *position == 0 {
                    // Identity: entries stay in the melody's own space.
                    return Ok(ProcessOutput::Melody(Melody::new(melody.space().clone(), out)?));
                }
                Ok(ProcessOutput::Melody(Melody::new(self.t_space.clone(), out)?))
            }
            ProcessKind::Alternate { start_position } => {
                let first = match seed {
                    Some(Seed::Note(t)) => t,
                    Some(Seed::Silent) => {
                        return Err(Error::Config("a silent seed is not valid for a pitch-valued process".into()))
                    }
                    None => t_position(&self.t_space, notes[0], *start_position)?,
                };
                let mut out = vec![first];
                for i in 1..notes.len() {
                    out.push(alternate_rule(&self.t_space, notes[i], notes[i - 1], out[i - 1])?);
                }
                Ok(ProcessOutput::Melody(Melody::new(self.t_space.clone(), out)?))
            }
            ProcessKind::Step { position, descending_lookahead } => {
                let first = match seed {
                    Some(Seed::Note(t)) => t,
                    Some(Seed::Silent) => {
                        return Err(Error::Config("a silent seed is not valid for a pitch-valued process".into()))
                    }
                    None => t_position(&self.t_space, notes[0], *position)?,
                };
                let mut out = vec![first];
                for i in 1..notes.len() {
                    let reference = if *position < 0 && *descending_lookahead {
                        // Literal descending reading: compare against the next
                        // melody note, clamped at the end of the melody.
                        notes.get(i + 1).copied().unwrap_or(notes[i])
                    } else {
                        notes[i]
                    };
                    out.push(step_rule(&self.t_space, *position, reference, out[i - 1])?);
                }
                Ok(ProcessOutput::Melody(Melody::new(self.t_space.clone(), out)?))
            }
            ProcessKind::RepeatPrevious { bounds } => {
                let mut entries: Vec<OrnamentEntry> = Vec::with_capacity(notes.len());
                for i in 0..notes.len() {
                    if i == 0 || i + 1 == notes.len() {
                        entries.push(None);
                    } else {
                        entries.push(repeat_previous_rule(bounds, notes[i - 1], notes[i + 1]));
                    }
                }
                apply_seed(&mut entries, seed);
                Ok(ProcessOutput::Ornaments(OrnamentTrack::new(&self.t_space, entries)?))
            }
            ProcessKind::TailRotatedPattern { pattern, direction } => {
                let mut entries: Vec<OrnamentEntry> = Vec::with_capacity(notes.len());
                for i in 0..notes.len() {
                    entries.push(tail_rotated_pattern_rule(pattern, *direction, i)?);
                }
                apply_seed(&mut entries, seed);
                Ok(ProcessOutput::Ornaments(OrnamentTrack::new(&self.t_space, entries)?))
            }
        }
    }
}

fn apply_seed(entries: &mut [OrnamentEntry], seed: Option<Seed>) {
    match seed {
        Some(Seed::Silent) => entries[0] = None,
        Some(Seed::Note(t)) => entries[0] = Some(t),
        None => {}
    }
}

/// The constant rule: always the same position of the current melody note.
pub fn constant_rule(t_space: &PitchSpace, position: i64, melody_note: Pitch) -> Result<Pitch> {
    t_position(t_space, melody_note, position)
}

/// One step of the alternating rule: read the previous output's position
/// relative to the previous melody note and flip its sign.
pub fn alternate_rule(
    t_space: &PitchSpace,
    melody_note: Pitch,
    melody_prev: Pitch,
    t_prev: Pitch,
) -> Result<Pitch> {
    let prev_position = position_of(t_space, melody_prev, t_prev)?;
    t_position(t_space, melody_note, -prev_position)
}

/// One step of the neighbor-move process: try the member below the previous
/// output; keep it if it stays at least `position` away from the melody,
/// otherwise take the member above. For negative positions the rule is
/// mirrored. Equality keeps the tried neighbor.
pub fn step_rule(t_space: &PitchSpace, position: i64, melody_note: Pitch, t_prev: Pitch) -> Result<Pitch> {
    let floor = t_position(t_space, melody_note, position)?;
    if position >= 0 {
        match t_position(t_space, t_prev, -1) {
            Ok(down) if down >= floor => Ok(down),
            _ => t_position(t_space, t_prev, 1),
        }
    } else {
        match t_position(t_space, t_prev, 1) {
            Ok(up) if up <= floor => Ok(up),
            _ => t_position(t_space, t_prev, -1),
        }
    }
}

/// The repeat-previous ornament rule: the previous melody note, when it
/// differs from the next melody note and both lie within bounds.
pub fn repeat_previous_rule(bounds: &OrnamentBounds, m_prev: Pitch, m_next: Pitch) -> OrnamentEntry {
    if m_next != m_prev && bounds.admits(m_prev, m_next) {
        Some(m_prev)
    } else {
        None
    }
}

/// Entry `i` of the endlessly repeated, tail-rotated ornament pattern.
pub fn tail_rotated_pattern_rule(
    pattern: &[OrnamentEntry],
    direction: RotationDirection,
    i: usize,
) -> Result<OrnamentEntry> {
    if pattern.is_empty() {
        return Err(Error::Validation("ornament pattern must not be empty".into()));
    }
    if pattern.len() == 1 {
        return Ok(pattern[0]);
    }
    let r = tail_rotation(pattern, i / pattern.len(), direction)?;
    Ok(r[i % pattern.len()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{PitchSpace, Scale};

    fn p(s: &str) -> Pitch {
        s.parse().unwrap()
    }

    fn m_space() -> PitchSpace {
        PitchSpace::generate(Scale::parse(&["E4", "F#4", "G4", "A4", "B4", "C5", "D5"]).unwrap()).unwrap()
    }

    fn t_space() -> PitchSpace {
        PitchSpace::generate(Scale::parse(&["E4", "G4", "B4"]).unwrap()).unwrap()
    }

    fn melody(space: &PitchSpace, names: &[&str]) -> Melody {
        Melody::new(space.clone(), names.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn rotate_conventions() {
        let x = ["a", "b", "c", "d"];
        assert_eq!(rotate(&x, 0, RotationDirection::Left), x);
        assert_eq!(rotate(&x, 1, RotationDirection::Left), ["b", "c", "d", "a"]);
        assert_eq!(rotate(&x, 1, RotationDirection::Right), ["d", "a", "b", "c"]);
        assert_eq!(rotate(&x, 5, RotationDirection::Left), rotate(&x, 1, RotationDirection::Left));
        // full cycle returns the input
        let once = rotate(&x, 1, RotationDirection::Left);
        assert_eq!(rotate(&once, 3, RotationDirection::Left), x);
    }

    #[test]
    fn tail_rotation_fixes_the_head() {
        let x = ["e", "d", "c"];
        assert_eq!(tail_rotation(&x, 0, RotationDirection::Left).unwrap(), x);
        assert_eq!(tail_rotation(&x, 1, RotationDirection::Left).unwrap(), ["e", "c", "d"]);
        assert!(tail_rotation(&["solo"], 1, RotationDirection::Left).is_err());
    }

    #[test]
    fn melodic_modes() {
        let m = m_space();
        let desc = mode(&m, MelodicMode::DescendingFrom, 6, p("E4")).unwrap();
        let got: Vec<String> = desc.notes().iter().map(|x| x.to_string()).collect();
        assert_eq!(got, ["E4", "D4", "C4", "B3", "A3", "G3"]);

        let toward = mode(&m, MelodicMode::AscendingToward, 6, p("D4")).unwrap();
        let got: Vec<String> = toward.notes().iter().map(|x| x.to_string()).collect();
        assert_eq!(got, ["F#3", "G3", "A3", "B3", "C4", "D4"]);

        for kind in [
            MelodicMode::AscendingFrom,
            MelodicMode::DescendingFrom,
            MelodicMode::DescendingToward,
            MelodicMode::AscendingToward,
        ] {
            let one = mode(&m, kind, 1, p("C4")).unwrap();
            assert_eq!(one.notes(), &[p("C4")]);
        }

        assert!(mode(&m, MelodicMode::AscendingFrom, 1000, p("E4")).is_err(), "gamut overflow");
        assert!(mode(&m, MelodicMode::AscendingFrom, 0, p("E4")).is_err());
    }

    #[test]
    fn t_position_anchors() {
        let t = t_space();
        assert_eq!(t_position(&t, p("A3"), 2).unwrap(), p("E4"));
        assert_eq!(t_position(&t, p("A3"), -1).unwrap(), p("E3"));
        assert_eq!(t_position(&t, p("G4"), 0).unwrap(), p("G4"));
        assert_eq!(t_position(&t, p("E4"), 1).unwrap(), p("G4"));
        assert_eq!(t_position(&t, p("E4"), 2).unwrap(), p("B4"));
        assert_eq!(t_position(&t, p("B4"), -1).unwrap(), p("G4"));
        assert!(t_position(&t, p("A3"), 100).is_err());
        assert!(t_position(&t, p("E0"), -1).is_err());
    }

    #[test]
    fn position_of_inverts_t_position() {
        let t = t_space();
        let m = m_space();
        assert_eq!(position_of(&t, p("A3"), p("E4")).unwrap(), 2);
        assert_eq!(position_of(&t, p("G4"), p("G4")).unwrap(), 0);
        let lo = m.degree(p("E4")).unwrap();
        for mem in &m.members()[lo..lo + 8] {
            for pp in -4..=4i64 {
                let Ok(tp) = t_position(&t, *mem, pp) else { continue };
                if !t.contains(tp) {
                    // only position 0 of a non-member escapes the triad space
                    assert_eq!(pp, 0);
                    continue;
                }
                assert_eq!(position_of(&t, *mem, tp).unwrap(), pp, "m={mem} p={pp}");
            }
        }
        // the member a non-member pitch floors to has no integer position
        assert!(position_of(&t, p("A3"), p("G3")).is_err());
        assert!(position_of(&t, p("A3"), p("A3")).is_err(), "A3 is not a triad member");
    }

    #[test]
    fn constant_process() {
        let t = t_space();
        let m = m_space();
        let proc = TintinnabuliProcess::new(t.clone(), ProcessKind::Constant { position: 1 }).unwrap();
        let out = proc
            .run(&melody(&m, &["E4", "F#4", "G4"]), None)
            .unwrap()
            .into_melody()
            .unwrap();
        let got: Vec<String> = out.notes().iter().map(|x| x.to_string()).collect();
        assert_eq!(got, ["G4", "G4", "B4"]);
        assert_eq!(out.space(), &t);
    }

    #[test]
    fn constant_zero_position_is_identity_when_permitted() {
        let t = t_space();
        let m = m_space();
        assert!(TintinnabuliProcess::new(t.clone(), ProcessKind::Constant { position: 0 }).is_err());
        let proc =
            TintinnabuliProcess::with_zero_position(t, ProcessKind::Constant { position: 0 }, true).unwrap();
        let mel = melody(&m, &["E4", "A4", "D5"]);
        let out = proc.run(&mel, None).unwrap().into_melody().unwrap();
        assert_eq!(out.notes(), mel.notes());
    }

    #[test]
    fn constant_commutes_with_octave_transposition_in_positions() {
        let t = t_space();
        let m = m_space();
        let proc = TintinnabuliProcess::new(t.clone(), ProcessKind::Constant { position: 2 }).unwrap();
        let low = melody(&m, &["E3", "F#3", "G3", "A3"]);
        let high = melody(&m, &["E4", "F#4", "G4", "A4"]);
        let out_low = proc.run(&low, None).unwrap().into_melody().unwrap();
        let out_high = proc.run(&high, None).unwrap().into_melody().unwrap();
        for i in 0..low.len() {
            let p_low = position_of(&t, low.notes()[i], out_low.notes()[i]).unwrap();
            let p_high = position_of(&t, high.notes()[i], out_high.notes()[i]).unwrap();
            assert_eq!(p_low, p_high);
        }
    }

    #[test]
    fn alternate_flips_positions() {
        let t = t_space();
        let m = m_space();
        let proc = TintinnabuliProcess::new(t.clone(), ProcessKind::Alternate { start_position: 1 }).unwrap();
        let mel = melody(&m, &["A3", "B3", "C4"]);
        let out = proc.run(&mel, None).unwrap().into_melody().unwrap();
        let positions: Vec<i64> = (0..3)
            .map(|i| position_of(&t, mel.notes()[i], out.notes()[i]).unwrap())
            .collect();
        assert_eq!(positions, [1, -1, 1]);
    }

    #[test]
    fn alternate_on_constant_melody_toggles_two_pitches() {
        let t = t_space();
        let m = m_space();
        let proc = TintinnabuliProcess::new(t.clone(), ProcessKind::Alternate { start_position: 1 }).unwrap();
        let mel = melody(&m, &["A3", "A3", "A3", "A3"]);
        let out = proc.run(&mel, None).unwrap().into_melody().unwrap();
        let up = t_position(&t, p("A3"), 1).unwrap();
        let down = t_position(&t, p("A3"), -1).unwrap();
        assert_eq!(out.notes(), &[up, down, up, down]);
    }

    #[test]
    fn step_process_opening() {
        let t = t_space();
        let m = m_space();
        let proc = TintinnabuliProcess::new(
            t.clone(),
            ProcessKind::Step { position: 2, descending_lookahead: false },
        )
        .unwrap();
        let mel = melody(&m, &["E4", "D4", "C4"]);
        // default seed is position 2 of the first melody note
        assert_eq!(t_position(&t, p("E4"), 2).unwrap(), p("B4"));
        let out = proc.run(&mel, None).unwrap().into_melody().unwrap();
        let got: Vec<String> = out.notes().iter().map(|x| x.to_string()).collect();
        assert_eq!(got, ["B4", "G4", "B4"]);
    }

    #[test]
    fn step_never_repeats_and_respects_the_floor() {
        let t = t_space();
        let m = m_space();
        let proc = TintinnabuliProcess::new(
            t.clone(),
            ProcessKind::Step { position: 2, descending_lookahead: false },
        )
        .unwrap();
        let names = ["E4", "D4", "C4", "B3", "A3", "G3", "F#3", "G3", "A3", "B3", "C4", "D4", "E4"];
        let mel = melody(&m, &names);
        let out = proc.run(&mel, None).unwrap().into_melody().unwrap();
        for i in 1..out.len() {
            let prev = out.notes()[i - 1];
            let cur = out.notes()[i];
            assert_ne!(cur, prev, "repetitions are not allowed");
            let neighbors = [t_position(&t, prev, -1).ok(), t_position(&t, prev, 1).ok()];
            assert!(neighbors.contains(&Some(cur)), "{cur} is not a neighbor of {prev}");
            let floor = t_position(&t, mel.notes()[i], 2).unwrap();
            assert!(cur >= floor, "{cur} fell below the floor {floor}");
        }
    }

    #[test]
    fn seeded_single_note_melody_returns_the_seed() {
        let t = t_space();
        let m = m_space();
        let mel = melody(&m, &["A3"]);
        for kind in [
            ProcessKind::Constant { position: 1 },
            ProcessKind::Alternate { start_position: 1 },
            ProcessKind::Step { position: 1, descending_lookahead: false },
        ] {
            let proc = TintinnabuliProcess::new(t.clone(), kind).unwrap();
            let out = proc.run(&mel, Some(Seed::Note(p("B3")))).unwrap().into_melody().unwrap();
            assert_eq!(out.notes(), &[p("B3")]);
        }
    }

    #[test]
    fn repeat_previous_rule_and_endpoints() {
        let t = t_space();
        let bounds = OrnamentBounds {
            note_low: Some(p("E4")),
            note_high: Some(p("E5")),
            next_low: None,
            next_high: Some(p("E5")),
        };
        let proc = TintinnabuliProcess::new(t.clone(), ProcessKind::RepeatPrevious { bounds }).unwrap();
        let mel = Melody::new(t.clone(), vec![p("B4"), p("G4"), p("B4"), p("E5"), p("G5")]).unwrap();
        let out = proc.run(&mel, None).unwrap().into_ornaments().unwrap();
        // endpoints silent by definition
        assert_eq!(out.get(0), None);
        assert_eq!(out.get(4), None);
        // i=1: prev B4, next B4 -> equal, silent
        assert_eq!(out.get(1), None);
        // i=2: prev G4, next E5 -> differ, G4 within [E4,E5], E5 <= E5
        assert_eq!(out.get(2), Some(p("G4")));
        // i=3: prev B4, next G5 -> next exceeds E5, silent
        assert_eq!(out.get(3), None);
    }

    #[test]
    fn tail_rotated_pattern_blocks() {
        let t = t_space();
        let pattern: Vec<OrnamentEntry> =
            vec![None, Some(p("G3")), None, Some(p("B3"))];
        let proc = TintinnabuliProcess::new(
            t.clone(),
            ProcessKind::TailRotatedPattern { pattern: pattern.clone(), direction: RotationDirection::Left },
        )
        .unwrap();
        let mel = Melody::new(t.clone(), vec![p("E4"); 8]).unwrap();
        let out = proc.run(&mel, None).unwrap().into_ornaments().unwrap();
        // first block: the pattern itself
        assert_eq!(&out.entries()[0..4], &pattern[..]);
        // second block: head fixed, tail rotated left once
        assert_eq!(
            &out.entries()[4..8],
            &[None, None, Some(p("B3")), Some(p("G3"))]
        );
    }

    #[test]
    fn process_determinism_from_prefix() {
        // re-running from any prefix of the output yields the same suffix
        let t = t_space();
        let m = m_space();
        let proc = TintinnabuliProcess::new(
            t.clone(),
            ProcessKind::Step { position: 2, descending_lookahead: false },
        )
        .unwrap();
        let names = ["E4", "D4", "C4", "B3", "C4", "D4", "E4", "F#4"];
        let mel = melody(&m, &names);
        let full = proc.run(&mel, None).unwrap().into_melody().unwrap();
        for split in 1..names.len() {
            let tail_mel = melody(&m, &names[split - 1..]);
            let seeded = proc
                .run(&tail_mel, Some(Seed::Note(full.notes()[split - 1])))
                .unwrap()
                .into_melody()
                .unwrap();
            assert_eq!(&full.notes()[split - 1..], seeded.notes());
        }
    }

    #[test]
    fn empty_melody_rejected() {
        let t = t_space();
        let proc = TintinnabuliProcess::new(t.clone(), ProcessKind::Constant { position: 1 }).unwrap();
        let empty = Melody::new(t, vec![]).unwrap();
        assert!(proc.run(&empty, None).is_err());
    }
}
