//! Syllable-aligned four-part score model.
//!
//! The time unit is the syllable: each cell holds the note(s) one voice
//! sings on one syllable of one bar. A cell has a main note, an optional
//! slurred ornament, and (only on imported scores with irregular bars) an
//! overflow list of extra notes.

use crate::error::{Error, Result};
use crate::pitch::Pitch;
use crate::plan::{PiecePlan, Voice, ALL_VOICES};
use std::fmt;

/// Exact note duration in quarters, stored as a count of eighths so the
/// denominator never exceeds 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dur {
    eighths: u32,
}

impl Dur {
    pub const EIGHTH: Dur = Dur { eighths: 1 };
    pub const QUARTER: Dur = Dur { eighths: 2 };
    pub const HALF: Dur = Dur { eighths: 4 };

    pub fn from_quarters(quarters: u32) -> Dur {
        Dur { eighths: quarters * 2 }
    }

    /// Parse an "n/d" fraction of quarters with d in {1, 2}.
    pub fn parse(s: &str) -> Result<Dur> {
        let bad = || Error::Validation(format!("cannot parse duration {s:?}; expected \"n/1\" or \"n/2\""));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: u32 = num.trim().parse().map_err(|_| bad())?;
        let eighths = match den.trim() {
            "1" => num.checked_mul(2),
            "2" => Some(num),
            _ => return Err(bad()),
        }
        .ok_or_else(bad)?;
        if eighths == 0 {
            return Err(Error::Validation("duration must be positive".into()));
        }
        Ok(Dur { eighths })
    }

    pub fn eighths(&self) -> u32 {
        self.eighths
    }

    pub fn halved(&self) -> Result<Dur> {
        if !self.eighths.is_multiple_of(2) {
            return Err(Error::Validation(format!("cannot halve {self} within eighth-note resolution")));
        }
        Ok(Dur { eighths: self.eighths / 2 })
    }

    pub fn checked_add(&self, other: Dur) -> Dur {
        Dur { eighths: self.eighths + other.eighths }
    }

    pub fn whole_quarters(&self) -> Option<u32> {
        self.eighths.is_multiple_of(2).then_some(self.eighths / 2)
    }
}

impl fmt::Display for Dur {
    /// Always the "n/d" form: "1/2", "1/1", "2/1".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eighths.is_multiple_of(2) {
            write!(f, "{}/1", self.eighths / 2)
        } else {
            write!(f, "{}/2", self.eighths)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Note {
    pub pitch: Pitch,
    pub duration: Dur,
}

/// Everything one voice sings on one syllable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyllableCell {
    pub voice: Voice,
    pub bar: u32,
    /// Zero-based syllable index within the bar.
    pub index: usize,
    pub lyric: String,
    pub main: Note,
    pub ornament: Option<Note>,
    /// Set exactly when an ornament is present.
    pub slur: bool,
    /// Extra notes beyond main + ornament; only produced by importing
    /// irregular bars (melismas), never by the generator.
    pub overflow: Vec<Note>,
}

impl SyllableCell {
    /// Total sounding duration of the cell.
    pub fn duration(&self) -> Dur {
        let mut d = self.main.duration;
        if let Some(o) = &self.ornament {
            d = d.checked_add(o.duration);
        }
        for n in &self.overflow {
            d = d.checked_add(n.duration);
        }
        d
    }

    /// Number of noteheads in the cell.
    pub fn note_count(&self) -> usize {
        1 + usize::from(self.ornament.is_some()) + self.overflow.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metadata {
    pub title: String,
    pub key: String,
    /// Pitch names of the tintinnabuli triad generator.
    pub triad: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub voice: Voice,
    /// Cells in singing order: by bar, then syllable index.
    pub cells: Vec<SyllableCell>,
}

/// A complete syllable-aligned score over a piece plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Score {
    pub metadata: Metadata,
    pub plan: PiecePlan,
    /// Exactly four parts, in soprano, alto, tenor, bass order.
    pub parts: Vec<Part>,
}

impl Score {
    pub fn part(&self, voice: Voice) -> &Part {
        self.parts
            .iter()
            .find(|p| p.voice == voice)
            .expect("score holds all four parts")
    }

    pub fn part_mut(&mut self, voice: Voice) -> &mut Part {
        self.parts
            .iter_mut()
            .find(|p| p.voice == voice)
            .expect("score holds all four parts")
    }

    pub fn cell(&self, voice: Voice, bar: u32, index: usize) -> Option<&SyllableCell> {
        self.part(voice)
            .cells
            .iter()
            .find(|c| c.bar == bar && c.index == index)
    }

    /// Total noteheads over all parts.
    pub fn note_count(&self) -> usize {
        self.parts
            .iter()
            .flat_map(|p| &p.cells)
            .map(SyllableCell::note_count)
            .sum()
    }

    /// Length of a bar in quarters, derived from any active voice.
    pub fn bar_quarters(&self, bar: u32) -> Result<u32> {
        let plan_bar = self
            .plan
            .bar(bar)
            .ok_or_else(|| Error::Validation(format!("no bar {bar} in the plan")))?;
        let voice = ALL_VOICES
            .into_iter()
            .find(|v| plan_bar.voicing.includes(*v))
            .expect("every voicing includes a voice");
        let total = self
            .part(voice)
            .cells
            .iter()
            .filter(|c| c.bar == bar)
            .fold(Dur { eighths: 0 }, |acc, c| acc.checked_add(c.duration()));
        total.whole_quarters().ok_or_else(|| {
            Error::Validation(format!("bar {bar} does not sum to whole quarters"))
        })
    }

    /// Check the score covers exactly the slots the plan dictates and that
    /// all active voices agree on syllable durations.
    pub fn validate(&self) -> Result<()> {
        if self.parts.len() != 4 {
            return Err(Error::Validation(format!("expected 4 parts, got {}", self.parts.len())));
        }
        for (part, voice) in self.parts.iter().zip(ALL_VOICES) {
            if part.voice != voice {
                return Err(Error::Validation(format!(
                    "parts must be ordered soprano, alto, tenor, bass; found {} where {} belongs",
                    part.voice, voice
                )));
            }
            let expected = self.plan.voice_slots(part.voice);
            let actual: Vec<(u32, usize)> = part.cells.iter().map(|c| (c.bar, c.index)).collect();
            if expected != actual {
                return Err(Error::Validation(format!(
                    "{} cells do not cover the plan's slots (expected {}, found {})",
                    part.voice,
                    expected.len(),
                    actual.len()
                )));
            }
            for cell in &part.cells {
                if cell.voice != part.voice {
                    return Err(Error::Validation(format!(
                        "cell at bar {} index {} carries voice {} inside the {} part",
                        cell.bar, cell.index, cell.voice, part.voice
                    )));
                }
                if cell.slur != cell.ornament.is_some() {
                    return Err(Error::Validation(format!(
                        "{} bar {} syllable {}: slur flag must match ornament presence",
                        cell.voice, cell.bar, cell.index
                    )));
                }
            }
        }
        // homophony: per syllable, all active voices hold for the same time
        for bar in self.plan.bars() {
            for i in 0..bar.syllable_count() {
                let durs: Vec<Dur> = ALL_VOICES
                    .into_iter()
                    .filter(|v| bar.voicing.includes(*v))
                    .filter_map(|v| self.cell(v, bar.number, i))
                    .map(SyllableCell::duration)
                    .collect();
                if durs.windows(2).any(|w| w[0] != w[1]) {
                    return Err(Error::Validation(format!(
                        "bar {} syllable {i}: active voices disagree on duration",
                        bar.number
                    )));
                }
            }
        }
        Ok(())
    }
}
