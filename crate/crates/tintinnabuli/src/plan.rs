//! The bar/section/voicing/syllable architecture of the piece.
//!
//! The Credo text is distributed over 49 bars in 16 sections. A full section
//! spans three bars of 7, 9 and 7 syllables sung by SA, SATB and TB, with
//! the voicing order mirrored in every other section. The final section has
//! an extra bar: its last two bars carry 4 and 1 syllables.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Voice {
    Soprano,
    Alto,
    Tenor,
    Bass,
}

pub const ALL_VOICES: [Voice; 4] = [Voice::Soprano, Voice::Alto, Voice::Tenor, Voice::Bass];

impl Voice {
    pub fn name(self) -> &'static str {
        match self {
            Voice::Soprano => "soprano",
            Voice::Alto => "alto",
            Voice::Tenor => "tenor",
            Voice::Bass => "bass",
        }
    }

    pub fn parse(s: &str) -> Result<Voice> {
        match s.to_ascii_lowercase().as_str() {
            "soprano" | "s" => Ok(Voice::Soprano),
            "alto" | "a" => Ok(Voice::Alto),
            "tenor" | "t" => Ok(Voice::Tenor),
            "bass" | "b" => Ok(Voice::Bass),
            _ => Err(Error::Validation(format!("unknown voice {s:?}"))),
        }
    }
}

impl fmt::Display for Voice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Voicing {
    #[serde(rename = "SA")]
    SopranoAlto,
    #[serde(rename = "SATB")]
    Tutti,
    #[serde(rename = "TB")]
    TenorBass,
}

impl Voicing {
    pub fn includes(self, voice: Voice) -> bool {
        match self {
            Voicing::SopranoAlto => matches!(voice, Voice::Soprano | Voice::Alto),
            Voicing::Tutti => true,
            Voicing::TenorBass => matches!(voice, Voice::Tenor | Voice::Bass),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Voicing::SopranoAlto => "SA",
            Voicing::Tutti => "SATB",
            Voicing::TenorBass => "TB",
        }
    }
}

/// One bar of the plan: its section, voicing and syllable texts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bar {
    pub number: u32,
    pub section: u32,
    pub voicing: Voicing,
    pub syllables: Vec<String>,
}

impl Bar {
    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }
}

/// The fixed bar architecture a score is laid out over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecePlan {
    bars: Vec<Bar>,
}

/// Table of (section, voicing, syllables) for the 49 bars. Syllables that
/// continue into the next one keep their trailing hyphen.
const BARS: [(u32, Voicing, &[&str]); 49] = {
    use Voicing::{SopranoAlto as SA, TenorBass as TB, Tutti as SATB};
    [
        (1, SA, &["Cre-", "do", "in", "u-", "num", "de-", "um,"]),
        (1, SATB, &["Pa-", "trem", "o-", "mni-", "po-", "ten-", "tem,", "fa-", "cto-"]),
        (1, TB, &["rem", "coe-", "li", "et", "ter-", "rae,", "vi-"]),
        (2, TB, &["si-", "bi-", "li-", "um", "o-", "mni-", "um,"]),
        (2, SATB, &["et", "in-", "vi-", "si-", "bi-", "li-", "um,", "et", "in"]),
        (2, SA, &["u-", "num", "Do-", "mi-", "num", "Je-", "sum"]),
        (3, SA, &["Chri-", "stum,", "Fi-", "li-", "um", "De-", "i"]),
        (3, SATB, &["u-", "ni-", "ge-", "ni-", "tum,", "et", "ex", "Pa-", "tre"]),
        (3, TB, &["na-", "tum", "an-", "te", "o-", "mni-", "a"]),
        (4, TB, &["sae-", "cu-", "la.", "De-", "um", "de", "De-"]),
        (4, SATB, &["o,", "lu-", "men", "de", "lu-", "mi-", "ne,", "De-", "um"]),
        (4, SA, &["ve-", "rum", "de", "De-", "o", "ve-", "ro,"]),
        (5, SA, &["ge-", "ni-", "tum,", "non", "fa-", "ctum,", "con-"]),
        (5, SATB, &["sub-", "stan-", "ti-", "a-", "lem", "Pa-", "tri:", "per", "quem"]),
        (5, TB, &["o-", "mni-", "a", "fac-", "ta", "sunt.", "Qui"]),
        (6, TB, &["prop-", "ter", "nos", "ho-", "mi-", "nes,", "et"]),
        (6, SATB, &["pro-", "pter", "no-", "stram", "sa-", "lu-", "tem", "de-", "scen-"]),
        (6, SA, &["dit", "de", "coe-", "lis.", "Et", "in-", "car-"]),
        (7, SA, &["na-", "tus", "est", "de", "Spi-", "ri-", "tu"]),
        (7, SATB, &["San-", "cto", "ex", "Ma-", "ri-", "a", "Vir-", "gi-", "ne:"]),
        (7, TB, &["Et", "ho-", "mo", "fa-", "ctus", "est.", "Cru-"]),
        (8, TB, &["ci-", "fi-", "xus", "e-", "ti-", "am", "pro"]),
        (8, SATB, &["no-", "bis", "sub", "Pon-", "ti-", "o", "Pi-", "la-", "to"]),
        (8, SA, &["pas-", "sus", "et", "se-", "pul-", "tus", "est."]),
        (9, SA, &["Et", "re-", "sur-", "re-", "xit", "ter-", "ti-"]),
        (9, SATB, &["a", "di-", "e,", "se-", "cun-", "dum", "scri-", "ptu-", "ras."]),
        (9, TB, &["Et", "a-", "scen-", "dit", "in", "coe-", "lum,"]),
        (10, TB, &["se-", "det", "ad", "dex-", "te-", "ram", "Pa-"]),
        (10, SATB, &["tris.", "Et", "i-", "te-", "rum", "ven-", "tu-", "rus", "est"]),
        (10, SA, &["cum", "glo-", "ri-", "a,", "ju-", "di-", "ca-"]),
        (11, SA, &["re", "vi-", "vos", "et", "mor-", "tu-", "os,"]),
        (11, SATB, &["cu-", "jus", "re-", "gni", "non", "e-", "rit", "fi-", "nis."]),
        (11, TB, &["Et", "in", "Spi-", "ri-", "tum", "San-", "ctum,"]),
        (12, TB, &["Do-", "mi-", "num,", "et", "vi-", "vi-", "fi-"]),
        (12, SATB, &["can-", "tem:", "qui", "ex", "Pa-", "tre", "Fi-", "li-", "o-"]),
        (12, SA, &["que", "pro-", "ce-", "dit.", "Qui", "cum", "Pa-"]),
        (13, SA, &["tre", "et", "Fi-", "li-", "o", "si-", "mul"]),
        (13, SATB, &["ad-", "o-", "ra-", "tur,", "et", "con-", "glo-", "ri-", "fi-"]),
        (13, TB, &["ca-", "tur,", "qui", "lo-", "cu-", "tus", "est"]),
        (14, TB, &["per", "Pro-", "phe-", "tas.", "Et", "u-", "nam"]),
        (14, SATB, &["san-", "ctam", "ca-", "tho-", "li-", "cam", "et", "a-", "po-"]),
        (14, SA, &["sto-", "li-", "cam", "Ec-", "cle-", "si-", "am."]),
        (15, SA, &["Con-", "fi-", "te-", "or", "u-", "num", "ba-"]),
        (15, SATB, &["pti-", "sma", "in", "re-", "mis-", "si-", "o-", "nem", "pec-"]),
        (15, TB, &["ca-", "to-", "rum.", "Et", "ex-", "spe-", "cto"]),
        (16, TB, &["re-", "sur-", "re-", "cti-", "o-", "nem", "mor-"]),
        (16, SATB, &["tu-", "o-", "rum,", "et", "vi-", "tam", "ven-", "tu-", "ri"]),
        (16, SA, &["sae-", "cu-", "li.", "A-"]),
        (16, SATB, &["men"]),
    ]
};

impl PiecePlan {
    /// The Credo architecture of the piece.
    pub fn summa() -> PiecePlan {
        let bars = BARS
            .iter()
            .enumerate()
            .map(|(i, (section, voicing, syllables))| Bar {
                number: i as u32 + 1,
                section: *section,
                voicing: *voicing,
                syllables: syllables.iter().map(|s| s.to_string()).collect(),
            })
            .collect();
        PiecePlan { bars }
    }

    pub fn from_bars(bars: Vec<Bar>) -> Result<PiecePlan> {
        let plan = PiecePlan { bars };
        plan.validate()?;
        Ok(plan)
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn bar(&self, number: u32) -> Option<&Bar> {
        self.bars.get(number.checked_sub(1)? as usize)
    }

    pub fn sections(&self) -> u32 {
        self.bars.last().map(|b| b.section).unwrap_or(0)
    }

    pub fn total_syllables(&self) -> usize {
        self.bars.iter().map(Bar::syllable_count).sum()
    }

    /// Syllable slots of a voice, in singing order, as (bar number, index in bar).
    pub fn voice_slots(&self, voice: Voice) -> Vec<(u32, usize)> {
        let mut slots = Vec::new();
        for bar in &self.bars {
            if bar.voicing.includes(voice) {
                for i in 0..bar.syllable_count() {
                    slots.push((bar.number, i));
                }
            }
        }
        slots
    }

    /// Per-section slot counts of a voice, in section order.
    pub fn voice_section_counts(&self, voice: Voice) -> Vec<usize> {
        let mut counts = vec![0usize; self.sections() as usize];
        for bar in &self.bars {
            if bar.voicing.includes(voice) {
                counts[bar.section as usize - 1] += bar.syllable_count();
            }
        }
        counts
    }

    /// Whether the voice is silent after this bar (the next bar excludes it,
    /// or the piece ends).
    pub fn voice_exits_after(&self, voice: Voice, bar_number: u32) -> bool {
        match self.bar(bar_number + 1) {
            Some(next) => !next.voicing.includes(voice),
            None => true,
        }
    }

    /// Number of syllables in all bars before this one (for timeline plots).
    pub fn syllable_offset(&self, bar_number: u32) -> usize {
        self.bars
            .iter()
            .take_while(|b| b.number < bar_number)
            .map(Bar::syllable_count)
            .sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.bars.is_empty() {
            return Err(Error::Validation("plan has no bars".into()));
        }
        for (i, bar) in self.bars.iter().enumerate() {
            if bar.number != i as u32 + 1 {
                return Err(Error::Validation(format!(
                    "bar numbers must be consecutive from 1; found {} at index {i}",
                    bar.number
                )));
            }
            if bar.syllables.is_empty() {
                return Err(Error::Validation(format!("bar {} has no syllables", bar.number)));
            }
        }
        if self
            .bars
            .windows(2)
            .any(|w| w[1].section < w[0].section || w[1].section > w[0].section + 1)
        {
            return Err(Error::Validation("sections must be consecutive".into()));
        }
        Ok(())
    }
}
