//! Scales, scalar pitch spaces and the step algebra defined on them.
//!
//! A scale spanning at most an octave generates a pitch space: every gamut
//! pitch whose pitch class occurs in the scale, ordered ascending. All
//! diatonic arithmetic (degrees, transposition, mirroring, neighbors) happens
//! on the member list of such a space.

use crate::error::{Error, Result};
use crate::pitch::{Pitch, Spelling, GAMUT_MAX, GAMUT_MIN};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// An ascending set of pitches spanning at most an octave, with pairwise
/// distinct pitch classes. The scale fixes how members of the generated
/// space are spelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scale {
    pitches: Vec<Pitch>,
}

impl Scale {
    pub fn new(pitches: Vec<Pitch>) -> Result<Scale> {
        if pitches.is_empty() {
            return Err(Error::Validation("a scale needs at least one pitch".into()));
        }
        for w in pitches.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::Validation(format!(
                    "scale must be strictly ascending, got {} after {}",
                    w[1], w[0]
                )));
            }
        }
        let span = pitches.last().unwrap().index() - pitches[0].index();
        if span > 12 {
            return Err(Error::Validation(format!(
                "scale spans {span} semitones; more than an octave"
            )));
        }
        let mut classes: Vec<u8> = pitches.iter().map(|p| p.pitch_class()).collect();
        classes.sort_unstable();
        classes.dedup();
        if classes.len() != pitches.len() {
            return Err(Error::Validation("scale has duplicate pitch classes".into()));
        }
        Ok(Scale { pitches })
    }

    pub fn parse(names: &[&str]) -> Result<Scale> {
        let pitches = names
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Pitch>>>()?;
        Scale::new(pitches)
    }

    pub fn pitches(&self) -> &[Pitch] {
        &self.pitches
    }

    /// Spelling the scale uses for a pitch class, if the class occurs in it.
    pub fn spelling_for_class(&self, pc: u8) -> Option<Spelling> {
        self.pitches
            .iter()
            .find(|p| p.pitch_class() == pc % 12)
            .map(|p| p.spelling())
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.pitches.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", names.join(", "))
    }
}

/// All gamut pitches sharing a pitch class with the generating scale,
/// ordered ascending. Members carry the scale's spellings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PitchSpace {
    generator: Scale,
    members: Vec<Pitch>,
}

impl PitchSpace {
    /// Generate the space over the full C0..C8 gamut.
    pub fn generate(scale: Scale) -> Result<PitchSpace> {
        let low = Pitch::from_index(GAMUT_MIN as i16)?;
        let high = Pitch::from_index(GAMUT_MAX as i16)?;
        PitchSpace::generate_bounded(scale, low, high)
    }

    /// Generate the space over an explicit gamut slice.
    pub fn generate_bounded(scale: Scale, gamut_low: Pitch, gamut_high: Pitch) -> Result<PitchSpace> {
        if gamut_low >= gamut_high {
            return Err(Error::Validation(format!(
                "gamut low {gamut_low} must lie below gamut high {gamut_high}"
            )));
        }
        let mut members = Vec::new();
        for index in gamut_low.index()..=gamut_high.index() {
            let pc = index % 12;
            if let Some(spelling) = scale.spelling_for_class(pc) {
                members.push(Pitch::from_index_spelled(index as i16, spelling)?);
            }
        }
        Ok(PitchSpace { generator: scale, members })
    }

    pub fn generator(&self) -> &Scale {
        &self.generator
    }

    pub fn members(&self) -> &[Pitch] {
        &self.members
    }

    pub fn contains(&self, pitch: Pitch) -> bool {
        self.members
            .binary_search_by_key(&pitch.index(), |m| m.index())
            .is_ok()
    }

    /// Zero-based index of a member pitch.
    pub fn degree(&self, pitch: Pitch) -> Result<usize> {
        self.members
            .binary_search_by_key(&pitch.index(), |m| m.index())
            .map_err(|_| Error::Membership(format!("{pitch} is not a member of {}", self.generator)))
    }

    pub fn member_at(&self, degree: usize) -> Option<Pitch> {
        self.members.get(degree).copied()
    }

    /// Index of the highest member at or below the pitch, or None if the
    /// pitch lies below every member.
    pub(crate) fn floor_degree(&self, pitch: Pitch) -> Option<usize> {
        match self
            .members
            .binary_search_by_key(&pitch.index(), |m| m.index())
        {
            Ok(i) => Some(i),
            Err(0) => None,
            Err(i) => Some(i - 1),
        }
    }

    /// Member `steps` scale degrees away from a member pitch.
    pub fn transpose(&self, pitch: Pitch, steps: i64) -> Result<Pitch> {
        let d = self.degree(pitch)? as i64 + steps;
        if d < 0 || d >= self.members.len() as i64 {
            return Err(Error::Range(format!(
                "transposing {pitch} by {steps} steps leaves the gamut"
            )));
        }
        Ok(self.members[d as usize])
    }

    /// Member equally many steps from `center` as `pitch`, on the other side.
    pub fn mirror(&self, pitch: Pitch, center: Pitch) -> Result<Pitch> {
        let d = 2 * self.degree(center)? as i64 - self.degree(pitch)? as i64;
        if d < 0 || d >= self.members.len() as i64 {
            return Err(Error::Range(format!(
                "mirroring {pitch} about {center} leaves the gamut"
            )));
        }
        Ok(self.members[d as usize])
    }

    /// Nearest member strictly above or below a pitch, which need not be a
    /// member itself.
    pub fn neighbor(&self, pitch: Pitch, direction: Direction) -> Result<Pitch> {
        let i = self
            .members
            .partition_point(|m| m.index() < pitch.index());
        // members[..i] are strictly below, members[i..] at or above.
        let found = match direction {
            Direction::Up => {
                let mut j = i;
                while self.members.get(j).is_some_and(|m| *m == pitch) {
                    j += 1;
                }
                self.members.get(j).copied()
            }
            Direction::Down => {
                if i == 0 {
                    None
                } else {
                    Some(self.members[i - 1])
                }
            }
        };
        found.ok_or_else(|| {
            Error::Range(format!(
                "no member of {} lies {} {pitch} within the gamut",
                self.generator,
                match direction {
                    Direction::Up => "above",
                    Direction::Down => "below",
                },
            ))
        })
    }
}

/// A sequence of pitches confined to one pitch space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Melody {
    space: PitchSpace,
    notes: Vec<Pitch>,
}

impl Melody {
    pub fn new(space: PitchSpace, notes: Vec<Pitch>) -> Result<Melody> {
        for n in &notes {
            if !space.contains(*n) {
                return Err(Error::Membership(format!(
                    "melody note {n} is not a member of {}",
                    space.generator()
                )));
            }
        }
        Ok(Melody { space, notes })
    }

    pub fn space(&self) -> &PitchSpace {
        &self.space
    }

    pub fn notes(&self) -> &[Pitch] {
        &self.notes
    }

    pub fn len(&self) -> usize {
        self.notes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.notes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pitch {
        s.parse().unwrap()
    }

    pub(crate) fn e_minor_scale() -> Scale {
        Scale::parse(&["E4", "F#4", "G4", "A4", "B4", "C5", "D5"]).unwrap()
    }

    pub(crate) fn e_minor_triad() -> Scale {
        Scale::parse(&["E4", "G4", "B4"]).unwrap()
    }

    #[test]
    fn scale_validation() {
        assert!(Scale::parse(&["E4", "E4"]).is_err(), "not ascending");
        assert!(Scale::parse(&["E4", "D4"]).is_err(), "descending");
        assert!(Scale::parse(&["C4", "D4", "C5"]).is_err(), "duplicate class");
        assert!(Scale::parse(&["C4", "D5"]).is_err(), "span beyond an octave");
        assert!(Scale::parse(&["C4", "C5"]).is_err(), "octave duplicates class");
        assert!(Scale::parse(&[]).is_err(), "empty");
    }

    #[test]
    fn scalar_space_around_the_generator() {
        let m = PitchSpace::generate(e_minor_scale()).unwrap();
        let expect = ["E3", "F#3", "G3", "A3", "B3", "C4", "D4", "E4"];
        let d = m.degree(p("E3")).unwrap();
        let got: Vec<String> = m.members()[d..d + 8].iter().map(|x| x.to_string()).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn triad_space_members() {
        let t = PitchSpace::generate(e_minor_triad()).unwrap();
        let d = t.degree(p("E4")).unwrap();
        let got: Vec<String> = t.members()[d..d + 4].iter().map(|x| x.to_string()).collect();
        assert_eq!(got, ["E4", "G4", "B4", "E5"]);
        assert_eq!(t.degree(p("B4")).unwrap() - t.degree(p("E4")).unwrap(), 2);
    }

    #[test]
    fn single_pitch_scale_gives_octaves() {
        let s = Scale::parse(&["C4"]).unwrap();
        let space = PitchSpace::generate(s).unwrap();
        let got: Vec<String> = space.members().iter().map(|x| x.to_string()).collect();
        assert_eq!(got, ["C0", "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8"]);
    }

    #[test]
    fn members_carry_scale_spellings() {
        let m = PitchSpace::generate(e_minor_scale()).unwrap();
        let fs3 = m.members()[m.degree(p("F#3")).unwrap()];
        assert_eq!(fs3.to_string(), "F#3");
    }

    #[test]
    fn degree_is_a_monotone_bijection() {
        let m = PitchSpace::generate(e_minor_scale()).unwrap();
        assert_eq!(m.degree(m.members()[0]).unwrap(), 0);
        for (i, member) in m.members().iter().enumerate() {
            assert_eq!(m.degree(*member).unwrap(), i);
        }
        let e4 = m.degree(p("E4")).unwrap();
        assert_eq!(m.degree(p("F#4")).unwrap(), e4 + 1, "scale neighbors take consecutive degrees");
    }

    #[test]
    fn octave_transposed_generator_gives_identical_members() {
        let a = PitchSpace::generate(e_minor_scale()).unwrap();
        let shifted = Scale::parse(&["E3", "F#3", "G3", "A3", "B3", "C4", "D4"]).unwrap();
        let b = PitchSpace::generate(shifted).unwrap();
        assert_eq!(a.members(), b.members());
    }

    #[test]
    fn transpose_walks_scale_degrees() {
        let m = PitchSpace::generate(e_minor_scale()).unwrap();
        assert_eq!(m.transpose(p("E4"), 0).unwrap(), p("E4"));
        assert_eq!(m.transpose(p("E4"), -6).unwrap(), p("F#3"));
        assert_eq!(m.transpose(p("E4"), 7).unwrap(), p("E5"));
        assert!(m.transpose(p("E4"), 1000).is_err());
        assert!(m.transpose(p("F4"), 1).is_err(), "F4 is not in E minor");
    }

    #[test]
    fn mirror_examples() {
        let m = PitchSpace::generate(e_minor_scale()).unwrap();
        assert_eq!(m.mirror(p("E4"), p("E4")).unwrap(), p("E4"));
        assert_eq!(m.mirror(p("D4"), p("E4")).unwrap(), p("F#4"));
        // involution
        for s in ["G3", "A3", "C4", "E4", "B4"] {
            let x = p(s);
            let once = m.mirror(x, p("E4")).unwrap();
            assert_eq!(m.mirror(once, p("E4")).unwrap(), x);
        }
    }

    #[test]
    fn neighbor_examples() {
        let t = PitchSpace::generate(e_minor_triad()).unwrap();
        assert_eq!(t.neighbor(p("A3"), Direction::Up).unwrap(), p("B3"));
        assert_eq!(t.neighbor(p("A3"), Direction::Down).unwrap(), p("G3"));
        assert_eq!(t.neighbor(p("E4"), Direction::Up).unwrap(), p("G4"));
        assert_eq!(t.neighbor(p("G4"), Direction::Down).unwrap(), p("E4"));
        assert!(t.neighbor(p("C0"), Direction::Down).is_err());
    }

    #[test]
    fn neighbor_round_trips() {
        let t = PitchSpace::generate(e_minor_triad()).unwrap();
        // non-member: down then up lands on the member above it
        let down = t.neighbor(p("A3"), Direction::Down).unwrap();
        assert_eq!(t.neighbor(down, Direction::Up).unwrap(), p("B3"));
        // and up then down on the member below
        let up = t.neighbor(p("A3"), Direction::Up).unwrap();
        assert_eq!(t.neighbor(up, Direction::Down).unwrap(), p("G3"));
        // member: up then down returns the original member
        let up = t.neighbor(p("G3"), Direction::Up).unwrap();
        assert_eq!(t.neighbor(up, Direction::Down).unwrap(), p("G3"));
    }

    #[test]
    fn bounded_gamut_clips_the_member_list() {
        let full = PitchSpace::generate(e_minor_triad()).unwrap();
        let clipped =
            PitchSpace::generate_bounded(e_minor_triad(), p("C3"), p("C5")).unwrap();
        assert!(clipped.members().len() < full.members().len());
        assert_eq!(clipped.members().first().copied(), Some(p("E3")));
        assert_eq!(clipped.members().last().copied(), Some(p("B4")));
        assert!(PitchSpace::generate_bounded(e_minor_triad(), p("C5"), p("C3")).is_err());
    }

    #[test]
    fn melody_requires_membership() {
        let m = PitchSpace::generate(e_minor_scale()).unwrap();
        assert!(Melody::new(m.clone(), vec![p("E4"), p("D4")]).is_ok());
        assert!(Melody::new(m, vec![p("E4"), p("Eb4")]).is_err());
    }
}
