//! Canonical JSON interchange for scores.
//!
//! The document mirrors the score model: metadata, the bar plan (with both a
//! syllable count and the syllable texts per bar), and one cell list per
//! part. Pitches are scientific pitch names, durations "n/d" fractions of a
//! quarter. Field order is fixed, so equal scores serialize byte-identically.

use crate::error::{Error, Result};
use crate::pitch::Pitch;
use crate::plan::{Bar, PiecePlan, Voice, Voicing};
use crate::process::{ProcessKind, TintinnabuliProcess};
use crate::score::{Dur, Metadata, Note, Part, Score, SyllableCell};
use crate::space::{Melody, PitchSpace, Scale};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
struct ScoreDoc {
    metadata: MetadataDoc,
    plan: PlanDoc,
    parts: Vec<PartDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MetadataDoc {
    title: String,
    key: String,
    triad: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PlanDoc {
    bars: Vec<BarDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct BarDoc {
    number: u32,
    section: u32,
    voicing: Voicing,
    syllables: usize,
    text: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PartDoc {
    voice: Voice,
    cells: Vec<CellDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CellDoc {
    bar: u32,
    index: usize,
    lyric: String,
    main: NoteDoc,
    ornament: Option<NoteDoc>,
    slur: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    overflow: Vec<NoteDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct NoteDoc {
    pitch: String,
    duration: String,
}

impl NoteDoc {
    fn from_note(n: &Note) -> NoteDoc {
        NoteDoc { pitch: n.pitch.to_string(), duration: n.duration.to_string() }
    }

    fn to_note(&self) -> Result<Note> {
        Ok(Note { pitch: self.pitch.parse()?, duration: Dur::parse(&self.duration)? })
    }
}

/// Serialize a score as canonical JSON.
pub fn export_json(score: &Score) -> String {
    let doc = ScoreDoc {
        metadata: MetadataDoc {
            title: score.metadata.title.clone(),
            key: score.metadata.key.clone(),
            triad: score.metadata.triad.clone(),
        },
        plan: PlanDoc {
            bars: score
                .plan
                .bars()
                .iter()
                .map(|b| BarDoc {
                    number: b.number,
                    section: b.section,
                    voicing: b.voicing,
                    syllables: b.syllable_count(),
                    text: b.syllables.clone(),
                })
                .collect(),
        },
        parts: score
            .parts
            .iter()
            .map(|p| PartDoc {
                voice: p.voice,
                cells: p
                    .cells
                    .iter()
                    .map(|c| CellDoc {
                        bar: c.bar,
                        index: c.index,
                        lyric: c.lyric.clone(),
                        main: NoteDoc::from_note(&c.main),
                        ornament: c.ornament.as_ref().map(NoteDoc::from_note),
                        slur: c.slur,
                        overflow: c.overflow.iter().map(NoteDoc::from_note).collect(),
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("score serializes") + "\n"
}

/// Read a canonical JSON document back into a score.
pub fn import_json(json: &str) -> Result<Score> {
    let doc: ScoreDoc =
        serde_json::from_str(json).map_err(|e| Error::Import(format!("invalid score JSON: {e}")))?;
    let bars = doc
        .plan
        .bars
        .iter()
        .map(|b| -> Result<crate::plan::Bar> {
            if b.syllables != b.text.len() {
                return Err(Error::Import(format!(
                    "bar {}: syllable count {} disagrees with {} text entries",
                    b.number,
                    b.syllables,
                    b.text.len()
                )));
            }
            Ok(Bar {
                number: b.number,
                section: b.section,
                voicing: b.voicing,
                syllables: b.text.clone(),
            })
        })
        .collect::<Result<Vec<Bar>>>()?;
    let plan = PiecePlan::from_bars(bars).map_err(|e| Error::Import(e.to_string()))?;

    let mut parts = Vec::with_capacity(doc.parts.len());
    for part in &doc.parts {
        let mut cells = Vec::with_capacity(part.cells.len());
        for c in &part.cells {
            if c.slur != c.ornament.is_some() {
                return Err(Error::Import(format!(
                    "{} bar {} syllable {}: slur flag must match ornament presence",
                    part.voice, c.bar, c.index
                )));
            }
            cells.push(SyllableCell {
                voice: part.voice,
                bar: c.bar,
                index: c.index,
                lyric: c.lyric.clone(),
                main: c.main.to_note()?,
                ornament: c.ornament.as_ref().map(NoteDoc::to_note).transpose()?,
                slur: c.slur,
                overflow: c.overflow.iter().map(NoteDoc::to_note).collect::<Result<Vec<Note>>>()?,
            });
        }
        parts.push(Part { voice: part.voice, cells });
    }

    let score = Score {
        metadata: Metadata { title: doc.metadata.title, key: doc.metadata.key, triad: doc.metadata.triad },
        plan,
        parts,
    };
    if score.parts.len() != 4 {
        return Err(Error::Import(format!("expected 4 parts, found {}", score.parts.len())));
    }
    Ok(score)
}

/// Parse a pitch name list, for ad-hoc process/melody documents.
pub fn parse_pitches(names: &[String]) -> Result<Vec<Pitch>> {
    names.iter().map(|s| s.parse()).collect()
}

/// An ad-hoc process definition: which rule to run, over which triad space,
/// with its kind-specific parameters.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProcessDoc {
    /// "constant", "alternate", "step", "repeat-previous" or
    /// "tail-rotated-pattern".
    pub kind: String,
    pub t_scale: Vec<String>,
    #[serde(default)]
    pub position: Option<i64>,
    #[serde(default)]
    pub bounds: Option<crate::process::OrnamentBounds>,
    #[serde(default)]
    pub pattern: Option<Vec<Option<String>>>,
    #[serde(default)]
    pub rotation_direction: Option<crate::process::RotationDirection>,
    #[serde(default)]
    pub descending_lookahead: bool,
    #[serde(default)]
    pub allow_zero_position: bool,
    #[serde(default)]
    pub gamut_low: Option<String>,
    #[serde(default)]
    pub gamut_high: Option<String>,
}

/// A melody document: the generating scale and the note list.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MelodyDoc {
    pub scale: Vec<String>,
    pub notes: Vec<String>,
    #[serde(default)]
    pub gamut_low: Option<String>,
    #[serde(default)]
    pub gamut_high: Option<String>,
}

fn bounded_space(scale: &[String], low: &Option<String>, high: &Option<String>) -> Result<PitchSpace> {
    let scale = Scale::new(parse_pitches(scale)?)?;
    let low: Pitch = low.as_deref().unwrap_or("C0").parse()?;
    let high: Pitch = high.as_deref().unwrap_or("C8").parse()?;
    PitchSpace::generate_bounded(scale, low, high)
}

/// Build a runnable process from its JSON document.
pub fn parse_process(json: &str) -> Result<TintinnabuliProcess> {
    let doc: ProcessDoc = serde_json::from_str(json)
        .map_err(|e| Error::Import(format!("invalid process document: {e}")))?;
    let t_space = bounded_space(&doc.t_scale, &doc.gamut_low, &doc.gamut_high)?;
    let need_position = || {
        doc.position
            .ok_or_else(|| Error::Config(format!("the {} kind needs a \"position\"", doc.kind)))
    };
    let kind = match doc.kind.as_str() {
        "constant" => ProcessKind::Constant { position: need_position()? },
        "alternate" => ProcessKind::Alternate { start_position: need_position()? },
        "step" => ProcessKind::Step {
            position: need_position()?,
            descending_lookahead: doc.descending_lookahead,
        },
        "repeat-previous" => {
            ProcessKind::RepeatPrevious { bounds: doc.bounds.unwrap_or_default() }
        }
        "tail-rotated-pattern" => {
            let names = doc.pattern.as_ref().ok_or_else(|| {
                Error::Config("the tail-rotated-pattern kind needs a \"pattern\"".into())
            })?;
            let pattern = names
                .iter()
                .map(|n| n.as_ref().map(|s| s.parse()).transpose())
                .collect::<Result<Vec<Option<Pitch>>>>()?;
            ProcessKind::TailRotatedPattern {
                pattern,
                direction: doc.rotation_direction.unwrap_or_default(),
            }
        }
        other => {
            return Err(Error::Config(format!(
                "unknown process kind {other:?}; expected constant, alternate, step, repeat-previous or tail-rotated-pattern"
            )))
        }
    };
    TintinnabuliProcess::with_zero_position(t_space, kind, doc.allow_zero_position)
}

/// Build a melody from its JSON document.
pub fn parse_melody(json: &str) -> Result<Melody> {
    let doc: MelodyDoc = serde_json::from_str(json)
        .map_err(|e| Error::Import(format!("invalid melody document: {e}")))?;
    let space = bounded_space(&doc.scale, &doc.gamut_low, &doc.gamut_high)?;
    let notes = parse_pitches(&doc.notes)?;
    Melody::new(space, notes)
}
