//! Pitches on the chromatic gamut C0..C8, with diatonic spellings.
//!
//! A [`Pitch`] is identified by its chromatic index (semitones above C0, so
//! C4 = 48). The spelling (letter, accidental) is carried along for display
//! and serialization but never participates in comparisons: two pitches are
//! equal iff they sound the same.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Lowest chromatic index of the gamut (C0).
pub const GAMUT_MIN: u8 = 0;
/// Highest chromatic index of the gamut (C8).
pub const GAMUT_MAX: u8 = 96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    C,
    D,
    E,
    F,
    G,
    A,
    B,
}

impl Letter {
    /// Semitone offset of the natural letter within an octave.
    pub fn semitone_offset(self) -> i16 {
        match self {
            Letter::C => 0,
            Letter::D => 2,
            Letter::E => 4,
            Letter::F => 5,
            Letter::G => 7,
            Letter::A => 9,
            Letter::B => 11,
        }
    }

    /// Position in the C-major letter cycle (C = 0 .. B = 6).
    pub fn diatonic_index(self) -> i16 {
        match self {
            Letter::C => 0,
            Letter::D => 1,
            Letter::E => 2,
            Letter::F => 3,
            Letter::G => 4,
            Letter::A => 5,
            Letter::B => 6,
        }
    }

    fn from_char(c: char) -> Option<Letter> {
        match c.to_ascii_uppercase() {
            'C' => Some(Letter::C),
            'D' => Some(Letter::D),
            'E' => Some(Letter::E),
            'F' => Some(Letter::F),
            'G' => Some(Letter::G),
            'A' => Some(Letter::A),
            'B' => Some(Letter::B),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Letter::C => 'C',
            Letter::D => 'D',
            Letter::E => 'E',
            Letter::F => 'F',
            Letter::G => 'G',
            Letter::A => 'A',
            Letter::B => 'B',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Accidental {
    Flat,
    Natural,
    Sharp,
}

impl Accidental {
    pub fn alter(self) -> i16 {
        match self {
            Accidental::Flat => -1,
            Accidental::Natural => 0,
            Accidental::Sharp => 1,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Accidental::Flat => "b",
            Accidental::Natural => "",
            Accidental::Sharp => "#",
        }
    }
}

/// A letter-plus-accidental spelling of a pitch class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Spelling {
    pub letter: Letter,
    pub accidental: Accidental,
}

impl Spelling {
    pub fn new(letter: Letter, accidental: Accidental) -> Spelling {
        Spelling { letter, accidental }
    }

    /// Pitch class (0..12) this spelling denotes.
    pub fn pitch_class(self) -> u8 {
        (self.letter.semitone_offset() + self.accidental.alter()).rem_euclid(12) as u8
    }

    /// Default spelling of a pitch class: naturals, then sharps.
    pub fn default_for_class(pc: u8) -> Spelling {
        use Accidental::{Natural, Sharp};
        use Letter::*;
        let (letter, accidental) = match pc % 12 {
            0 => (C, Natural),
            1 => (C, Sharp),
            2 => (D, Natural),
            3 => (D, Sharp),
            4 => (E, Natural),
            5 => (F, Natural),
            6 => (F, Sharp),
            7 => (G, Natural),
            8 => (G, Sharp),
            9 => (A, Natural),
            10 => (A, Sharp),
            _ => (B, Natural),
        };
        Spelling { letter, accidental }
    }
}

/// A concrete pitch: chromatic index into the gamut plus its spelling.
///
/// Ordering, equality and hashing use the chromatic index only, so F#3 and
/// Gb3 compare equal.
#[derive(Debug, Clone, Copy)]
pub struct Pitch {
    index: u8,
    spelling: Spelling,
}

impl Pitch {
    /// Construct from a spelling and octave number (scientific convention:
    /// the octave of the *letter*, so Cb4 sits a semitone below C4).
    pub fn new(letter: Letter, accidental: Accidental, octave: i16) -> Result<Pitch> {
        let index = octave * 12 + letter.semitone_offset() + accidental.alter();
        if index < GAMUT_MIN as i16 || index > GAMUT_MAX as i16 {
            return Err(Error::Range(format!(
                "pitch {}{}{} lies outside the gamut C0..C8",
                letter.as_char(),
                accidental.suffix(),
                octave
            )));
        }
        Ok(Pitch {
            index: index as u8,
            spelling: Spelling { letter, accidental },
        })
    }

    /// Construct from a chromatic index with the default (natural/sharp) spelling.
    pub fn from_index(index: i16) -> Result<Pitch> {
        if !(GAMUT_MIN as i16..=GAMUT_MAX as i16).contains(&index) {
            return Err(Error::Range(format!(
                "chromatic index {index} lies outside the gamut 0..={GAMUT_MAX}"
            )));
        }
        Ok(Pitch {
            index: index as u8,
            spelling: Spelling::default_for_class((index % 12) as u8),
        })
    }

    /// Construct from a chromatic index, spelled with the given spelling.
    /// The spelling must denote the same pitch class as the index.
    pub fn from_index_spelled(index: i16, spelling: Spelling) -> Result<Pitch> {
        let p = Pitch::from_index(index)?;
        if spelling.pitch_class() != p.pitch_class() {
            return Err(Error::Validation(format!(
                "spelling {}{} does not match pitch class {} of index {}",
                spelling.letter.as_char(),
                spelling.accidental.suffix(),
                p.pitch_class(),
                index
            )));
        }
        Ok(Pitch { index: p.index, spelling })
    }

    /// Semitones above C0.
    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn pitch_class(&self) -> u8 {
        self.index % 12
    }

    pub fn spelling(&self) -> Spelling {
        self.spelling
    }

    /// Octave digit used when displaying the pitch. Derived from the index
    /// and the spelling, so enharmonic spellings across the octave break
    /// (Cb4, B#3) keep the letter's own octave.
    pub fn octave(&self) -> i16 {
        (self.index as i16 - self.spelling.letter.semitone_offset() - self.spelling.accidental.alter())
            / 12
    }

    /// Letter-cycle position used for diatonic plotting: octave * 7 + letter.
    pub fn diatonic_index(&self) -> i16 {
        self.octave() * 7 + self.spelling.letter.diatonic_index()
    }

    /// The same sounding pitch respelled.
    pub fn respelled(&self, spelling: Spelling) -> Result<Pitch> {
        Pitch::from_index_spelled(self.index as i16, spelling)
    }
}

impl PartialEq for Pitch {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
    }
}

impl Eq for Pitch {}

impl PartialOrd for Pitch {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pitch {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index.cmp(&other.index)
    }
}

impl std::hash::Hash for Pitch {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.index.hash(state);
    }
}

impl fmt::Display for Pitch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            self.spelling.letter.as_char(),
            self.spelling.accidental.suffix(),
            self.octave()
        )
    }
}

impl FromStr for Pitch {
    type Err = Error;

    /// Scientific pitch notation: letter, optional `#`/`b`, octave digit.
    /// The letter is case-insensitive ("f#3" parses like "F#3").
    fn from_str(s: &str) -> Result<Pitch> {
        let bad = || Error::Validation(format!("cannot parse pitch {s:?}"));
        let mut chars = s.chars();
        let letter = chars.next().and_then(Letter::from_char).ok_or_else(bad)?;
        let rest: Vec<char> = chars.collect();
        let (accidental, digits) = match rest.split_first() {
            Some(('#', tail)) => (Accidental::Sharp, tail),
            Some(('b', tail)) => (Accidental::Flat, tail),
            _ => (Accidental::Natural, &rest[..]),
        };
        if digits.is_empty() || !digits.iter().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let octave: i16 = digits.iter().collect::<String>().parse().map_err(|_| bad())?;
        Pitch::new(letter, accidental, octave)
    }
}

impl serde::Serialize for Pitch {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Pitch {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Pitch, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pitch {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["C0", "C4", "F#3", "Bb2", "E4", "G#7", "C8"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn case_insensitive_letter() {
        assert_eq!(p("f#3"), p("F#3"));
        assert_eq!(p("e4").to_string(), "E4");
    }

    #[test]
    fn middle_c_is_48() {
        assert_eq!(p("C4").index(), 48);
        assert_eq!(p("C0").index(), 0);
        assert_eq!(p("C8").index(), 96);
    }

    #[test]
    fn enharmonics_compare_equal() {
        assert_eq!(p("F#3"), p("Gb3"));
        assert_eq!(p("F#3").to_string(), "F#3");
        assert_eq!(p("Gb3").to_string(), "Gb3");
    }

    #[test]
    fn octave_break_spellings() {
        // Cb4 sounds as B3, B#3 as C4; the displayed octave follows the letter.
        let cb4 = p("Cb4");
        assert_eq!(cb4.index(), 47);
        assert_eq!(cb4.to_string(), "Cb4");
        let bs3 = p("B#3");
        assert_eq!(bs3.index(), 48);
        assert_eq!(bs3, p("C4"));
    }

    #[test]
    fn out_of_gamut_rejected() {
        assert!("Cb0".parse::<Pitch>().is_err());
        assert!("D8".parse::<Pitch>().is_err());
        assert!(Pitch::from_index(97).is_err());
    }

    #[test]
    fn garbage_rejected() {
        for s in ["", "H4", "C", "4", "C#", "Cx4", "C-1"] {
            assert!(s.parse::<Pitch>().is_err(), "{s:?} should not parse");
        }
    }
}
