//! Assembly of the full reconstructed score.
//!
//! The pipeline: the fixed bar plan is laid out; the alto sings tail
//! rotations of a 16-note pattern, one rotation per section; the bass is the
//! alto's mirror image transposed down; soprano and tenor run stepwise
//! processes in second and first position over their melodic partners;
//! ornaments come from the repeat-previous process (soprano, tenor) and
//! tail-rotated patterns (alto, bass); rhythm follows from ornament
//! placement. Every stage is pure, so one configuration always yields the
//! same score.

use crate::error::{Error, Result};
use crate::pitch::Pitch;
use crate::plan::{PiecePlan, Voice, ALL_VOICES};
use crate::process::{
    tail_rotation, OrnamentBounds, OrnamentEntry, OrnamentTrack, ProcessKind, RotationDirection,
    TintinnabuliProcess,
};
use crate::score::{Dur, Metadata, Note, Part, Score, SyllableCell};
use crate::space::{Melody, PitchSpace, Scale};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Bounds of a repeat-previous ornament process, as pitch names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsConfig {
    #[serde(default)]
    pub note_low: Option<String>,
    #[serde(default)]
    pub note_high: Option<String>,
    #[serde(default)]
    pub next_low: Option<String>,
    #[serde(default)]
    pub next_high: Option<String>,
}

impl BoundsConfig {
    fn resolve(&self) -> Result<OrnamentBounds> {
        let parse = |s: &Option<String>| -> Result<Option<Pitch>> {
            s.as_ref().map(|x| x.parse()).transpose()
        };
        Ok(OrnamentBounds {
            note_low: parse(&self.note_low)?,
            note_high: parse(&self.note_high)?,
            next_low: parse(&self.next_low)?,
            next_high: parse(&self.next_high)?,
        })
    }
}

/// Full configuration of the generator. Serializable as JSON; every field
/// has a default, so a config document only lists what it overrides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SummaConfig {
    pub title: String,
    pub key: String,
    /// Generating scale of the melodic space.
    pub m_scale: Vec<String>,
    /// Generating triad of the tintinnabuli space.
    pub t_scale: Vec<String>,
    pub gamut_low: String,
    pub gamut_high: String,
    /// The 16-note pattern the alto tail-rotates through the sections.
    pub alto_pattern: Vec<String>,
    pub bass_mirror_center: String,
    /// Scale steps the mirrored pattern is moved down. -7 keeps the bass
    /// section heads on the tonic; -6 is the literal mirror-and-shift value.
    pub bass_transposition: i64,
    pub soprano_position: i64,
    pub tenor_position: i64,
    pub soprano_ornament_bounds: BoundsConfig,
    pub tenor_ornament_bounds: BoundsConfig,
    /// 16-slot ornament pattern cycled by the alto (null = no ornament).
    pub alto_ornament_pattern: Vec<Option<String>>,
    /// 16-slot ornament pattern cycled by the bass. The default ornaments
    /// the G and C of the ascent with E and B and places two matching
    /// ornaments on the descent; replace it from a reference edition when
    /// one is at hand, or set every slot null for a bare bass.
    pub bass_ornament_pattern: Vec<Option<String>>,
    pub rotation_direction: RotationDirection,
    /// Descending step processes compare against the next melody note
    /// instead of the current one.
    pub step_descending_lookahead: bool,
    /// Drop the final note of the alto pattern and stream rotations
    /// continuously instead of aligning one rotation per section.
    pub drop_last_pattern_note: bool,
    /// Permit position 0 in constant/step processes.
    pub allow_zero_position: bool,
    /// Remove ornaments on the last syllable before a voice falls silent.
    pub strip_ornamented_exits: bool,
}

impl Default for SummaConfig {
    fn default() -> Self {
        SummaConfig {
            title: "Summa".into(),
            key: "E minor".into(),
            m_scale: strings(&["E4", "F#4", "G4", "A4", "B4", "C5", "D5"]),
            t_scale: strings(&["E4", "G4", "B4"]),
            gamut_low: "C0".into(),
            gamut_high: "C8".into(),
            alto_pattern: strings(&[
                "E4", "D4", "C4", "B3", "A3", "G3", "F#3", "G3", "A3", "B3", "C4", "D4", "E4",
                "F#4", "G4", "F#4",
            ]),
            bass_mirror_center: "E4".into(),
            bass_transposition: -7,
            soprano_position: 2,
            tenor_position: 1,
            soprano_ornament_bounds: BoundsConfig {
                note_low: Some("E4".into()),
                note_high: Some("E5".into()),
                next_low: None,
                next_high: Some("E5".into()),
            },
            tenor_ornament_bounds: BoundsConfig {
                note_low: Some("E3".into()),
                note_high: Some("E4".into()),
                next_low: None,
                next_high: Some("B3".into()),
            },
            alto_ornament_pattern: vec![
                None,
                Some("G3".into()),
                None,
                None,
                None,
                Some("B3".into()),
                None,
                Some("E3".into()),
                None,
                None,
                Some("B3".into()),
                None,
                None,
                None,
                None,
                None,
            ],
            bass_ornament_pattern: vec![
                None,
                None,
                Some("E3".into()),
                None,
                None,
                Some("B3".into()),
                None,
                Some("G3".into()),
                None,
                None,
                Some("B3".into()),
                None,
                None,
                None,
                None,
                None,
            ],
            rotation_direction: RotationDirection::Left,
            step_descending_lookahead: false,
            drop_last_pattern_note: false,
            allow_zero_position: false,
            strip_ornamented_exits: false,
        }
    }
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

impl SummaConfig {
    pub fn from_json(json: &str) -> Result<SummaConfig> {
        serde_json::from_str(json)
            .map_err(|e| Error::Config(format!("cannot parse configuration: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub(crate) fn resolve(&self) -> Result<ResolvedConfig> {
        let gamut_low: Pitch = self.gamut_low.parse()?;
        let gamut_high: Pitch = self.gamut_high.parse()?;
        let parse_scale = |names: &[String]| -> Result<Scale> {
            Scale::new(names.iter().map(|s| s.parse()).collect::<Result<Vec<Pitch>>>()?)
        };
        let m_space =
            PitchSpace::generate_bounded(parse_scale(&self.m_scale)?, gamut_low, gamut_high)?;
        let t_space =
            PitchSpace::generate_bounded(parse_scale(&self.t_scale)?, gamut_low, gamut_high)?;
        for t in t_space.members() {
            if !m_space.contains(*t) {
                return Err(Error::Config(format!(
                    "triad member {t} is not a member of the melodic space"
                )));
            }
        }

        let mut alto_pattern: Vec<Pitch> = Vec::with_capacity(self.alto_pattern.len());
        for name in &self.alto_pattern {
            let p: Pitch = name.parse()?;
            let d = m_space.degree(p)?; // membership check with spelling
            alto_pattern.push(m_space.member_at(d).unwrap());
        }
        if self.drop_last_pattern_note {
            alto_pattern.pop();
        }
        if alto_pattern.len() < 2 {
            return Err(Error::Config("the alto pattern needs at least two notes".into()));
        }

        let resolve_ornaments = |names: &[Option<String>], len: usize| -> Result<Vec<OrnamentEntry>> {
            if names.is_empty() {
                return Ok(vec![None; len]);
            }
            if names.len() != len {
                return Err(Error::Config(format!(
                    "ornament pattern length {} does not match the melodic pattern length {len}",
                    names.len()
                )));
            }
            names
                .iter()
                .map(|n| -> Result<OrnamentEntry> {
                    match n {
                        None => Ok(None),
                        Some(s) => {
                            let p: Pitch = s.parse()?;
                            if !t_space.contains(p) {
                                return Err(Error::Config(format!(
                                    "ornament {p} is not a member of the triad space"
                                )));
                            }
                            Ok(Some(p))
                        }
                    }
                })
                .collect()
        };
        let pattern_len = if self.drop_last_pattern_note {
            alto_pattern.len() + 1
        } else {
            alto_pattern.len()
        };
        let mut alto_ornament_pattern = resolve_ornaments(&self.alto_ornament_pattern, pattern_len)?;
        let mut bass_ornament_pattern = resolve_ornaments(&self.bass_ornament_pattern, pattern_len)?;
        if self.drop_last_pattern_note {
            alto_ornament_pattern.pop();
            bass_ornament_pattern.pop();
        }

        let bass_mirror_center: Pitch = self.bass_mirror_center.parse()?;
        if !m_space.contains(bass_mirror_center) {
            return Err(Error::Config(format!(
                "mirror center {bass_mirror_center} is not a member of the melodic space"
            )));
        }

        Ok(ResolvedConfig {
            m_space,
            t_space,
            alto_pattern,
            alto_ornament_pattern,
            bass_ornament_pattern,
            bass_mirror_center,
            bass_transposition: self.bass_transposition,
            soprano_position: self.soprano_position,
            tenor_position: self.tenor_position,
            soprano_bounds: self.soprano_ornament_bounds.resolve()?,
            tenor_bounds: self.tenor_ornament_bounds.resolve()?,
            rotation_direction: self.rotation_direction,
            step_descending_lookahead: self.step_descending_lookahead,
            drop_last_pattern_note: self.drop_last_pattern_note,
            allow_zero_position: self.allow_zero_position,
        })
    }
}

/// Configuration with pitches parsed and spaces generated.
#[derive(Debug, Clone)]
pub(crate) struct ResolvedConfig {
    pub m_space: PitchSpace,
    pub t_space: PitchSpace,
    pub alto_pattern: Vec<Pitch>,
    pub alto_ornament_pattern: Vec<OrnamentEntry>,
    pub bass_ornament_pattern: Vec<OrnamentEntry>,
    pub bass_mirror_center: Pitch,
    pub bass_transposition: i64,
    pub soprano_position: i64,
    pub tenor_position: i64,
    pub soprano_bounds: OrnamentBounds,
    pub tenor_bounds: OrnamentBounds,
    pub rotation_direction: RotationDirection,
    pub step_descending_lookahead: bool,
    pub drop_last_pattern_note: bool,
    pub allow_zero_position: bool,
}

/// One voice's melody, ornaments and syllable slots.
#[derive(Debug, Clone)]
pub struct VoiceLine {
    pub voice: Voice,
    pub main: Melody,
    pub ornaments: OrnamentTrack,
    /// (bar number, syllable index) per note, in singing order.
    pub slots: Vec<(u32, usize)>,
}

impl VoiceLine {
    fn silent_ornaments(voice: Voice, main: Melody, slots: Vec<(u32, usize)>) -> VoiceLine {
        let ornaments = OrnamentTrack::silent(main.len());
        VoiceLine { voice, main, ornaments, slots }
    }
}

/// Concatenate tail rotations of the pattern until `count` notes are
/// available, then truncate.
fn pattern_stream(
    pattern: &[Pitch],
    direction: RotationDirection,
    count: usize,
) -> Result<Vec<Pitch>> {
    let mut out = Vec::with_capacity(count + pattern.len());
    let mut s = 0usize;
    while out.len() < count {
        out.extend(tail_rotation(pattern, s, direction)?);
        s += 1;
    }
    out.truncate(count);
    Ok(out)
}

/// Check that every full section offers exactly one pattern's worth of
/// syllables, so rotations stay aligned with sections.
fn check_section_alignment(
    plan: &PiecePlan,
    voice: Voice,
    pattern_len: usize,
) -> Result<()> {
    let counts = plan.voice_section_counts(voice);
    for (i, n) in counts.iter().enumerate() {
        if i + 1 < counts.len() && *n != pattern_len {
            return Err(Error::Validation(format!(
                "{voice} sings {n} syllables in section {} but the pattern has {pattern_len} notes",
                i + 1
            )));
        }
    }
    Ok(())
}

/// The alto: one tail rotation of the pattern per section, truncated to the
/// plan's slots in the final section.
pub fn build_alto(cfg: &SummaConfig, plan: &PiecePlan) -> Result<VoiceLine> {
    let rc = cfg.resolve().map_err(|e| e.in_stage("alto"))?;
    build_alto_resolved(&rc, plan).map_err(|e| e.in_stage("alto"))
}

fn build_alto_resolved(rc: &ResolvedConfig, plan: &PiecePlan) -> Result<VoiceLine> {
    let slots = plan.voice_slots(Voice::Alto);
    if !rc.drop_last_pattern_note {
        check_section_alignment(plan, Voice::Alto, rc.alto_pattern.len())?;
    }
    let notes = pattern_stream(&rc.alto_pattern, rc.rotation_direction, slots.len())?;
    let main = Melody::new(rc.m_space.clone(), notes)?;
    Ok(VoiceLine::silent_ornaments(Voice::Alto, main, slots))
}

/// The bass: the alto pattern mirrored about the configured center and
/// transposed, then tail-rotated over the bass's own slots.
pub fn build_bass(cfg: &SummaConfig, plan: &PiecePlan) -> Result<VoiceLine> {
    let rc = cfg.resolve().map_err(|e| e.in_stage("bass"))?;
    build_bass_resolved(&rc, plan).map_err(|e| e.in_stage("bass"))
}

fn build_bass_resolved(rc: &ResolvedConfig, plan: &PiecePlan) -> Result<VoiceLine> {
    let pattern = mirrored_pattern(rc)?;
    let slots = plan.voice_slots(Voice::Bass);
    if !rc.drop_last_pattern_note {
        check_section_alignment(plan, Voice::Bass, pattern.len())?;
    }
    let notes = pattern_stream(&pattern, rc.rotation_direction, slots.len())?;
    let main = Melody::new(rc.m_space.clone(), notes)?;
    Ok(VoiceLine::silent_ornaments(Voice::Bass, main, slots))
}

fn mirrored_pattern(rc: &ResolvedConfig) -> Result<Vec<Pitch>> {
    rc.alto_pattern
        .iter()
        .map(|p| {
            let mirrored = rc.m_space.mirror(*p, rc.bass_mirror_center)?;
            rc.m_space.transpose(mirrored, rc.bass_transposition)
        })
        .collect()
}

/// A tintinnabuli voice: the stepwise process in the given position over the
/// full concatenated melody of its partner, seeded at that position of the
/// first note. State is never reset at section boundaries.
pub fn build_t_voice(cfg: &SummaConfig, m_line: &VoiceLine, position: i64) -> Result<VoiceLine> {
    let rc = cfg.resolve().map_err(|e| e.in_stage("t-voice"))?;
    build_t_voice_resolved(&rc, m_line, position).map_err(|e| e.in_stage("t-voice"))
}

fn build_t_voice_resolved(
    rc: &ResolvedConfig,
    m_line: &VoiceLine,
    position: i64,
) -> Result<VoiceLine> {
    let voice = match m_line.voice {
        Voice::Alto => Voice::Soprano,
        Voice::Bass => Voice::Tenor,
        v => {
            return Err(Error::Config(format!(
                "cannot derive a tintinnabuli voice from the {v}"
            )))
        }
    };
    let proc = TintinnabuliProcess::with_zero_position(
        rc.t_space.clone(),
        ProcessKind::Step { position, descending_lookahead: rc.step_descending_lookahead },
        rc.allow_zero_position,
    )?;
    let main = proc.run(&m_line.main, None)?.into_melody()?;
    Ok(VoiceLine::silent_ornaments(voice, main, m_line.slots.clone()))
}

/// Attach ornaments to all four voices: repeat-previous over the soprano and
/// tenor's own lines, tail-rotated patterns over the alto and bass, indexed
/// by each voice's running note index.
pub fn build_ornaments(cfg: &SummaConfig, lines: &mut [VoiceLine; 4]) -> Result<()> {
    let rc = cfg.resolve().map_err(|e| e.in_stage("ornaments"))?;
    build_ornaments_resolved(&rc, lines).map_err(|e| e.in_stage("ornaments"))
}

fn build_ornaments_resolved(rc: &ResolvedConfig, lines: &mut [VoiceLine; 4]) -> Result<()> {
    for line in lines.iter_mut() {
        let kind = match line.voice {
            Voice::Soprano => ProcessKind::RepeatPrevious { bounds: rc.soprano_bounds },
            Voice::Tenor => ProcessKind::RepeatPrevious { bounds: rc.tenor_bounds },
            Voice::Alto => ProcessKind::TailRotatedPattern {
                pattern: rc.alto_ornament_pattern.clone(),
                direction: rc.rotation_direction,
            },
            Voice::Bass => ProcessKind::TailRotatedPattern {
                pattern: rc.bass_ornament_pattern.clone(),
                direction: rc.rotation_direction,
            },
        };
        if let ProcessKind::TailRotatedPattern { pattern, .. } = &kind {
            if pattern.iter().all(Option::is_none) {
                line.ornaments = OrnamentTrack::silent(line.main.len());
                continue;
            }
        }
        let proc =
            TintinnabuliProcess::with_zero_position(rc.t_space.clone(), kind, rc.allow_zero_position)?;
        line.ornaments = proc.run(&line.main, None)?.into_ornaments()?;
    }
    Ok(())
}

/// Remove ornaments on the last syllable of any bar after which the voice is
/// silent. Returns how many were removed; applying it twice removes nothing
/// more.
pub fn strip_ornamented_exits(lines: &mut [VoiceLine; 4], plan: &PiecePlan) -> usize {
    let mut stripped = 0;
    for line in lines.iter_mut() {
        for (i, (bar, index)) in line.slots.iter().enumerate() {
            let is_last_syllable = plan
                .bar(*bar)
                .is_some_and(|b| *index + 1 == b.syllable_count());
            if is_last_syllable
                && plan.voice_exits_after(line.voice, *bar)
                && line.ornaments.get(i).is_some()
            {
                line.ornaments.set(i, None);
                stripped += 1;
            }
        }
    }
    stripped
}

/// Lay the voice lines into the plan's bars and derive all durations from
/// ornament placement.
pub fn assign_rhythm(lines: &[VoiceLine; 4], plan: &PiecePlan, metadata: Metadata) -> Result<Score> {
    let mut by_slot: BTreeMap<(Voice, u32, usize), (Pitch, OrnamentEntry)> = BTreeMap::new();
    for line in lines {
        for (i, slot) in line.slots.iter().enumerate() {
            by_slot.insert(
                (line.voice, slot.0, slot.1),
                (line.main.notes()[i], line.ornaments.get(i)),
            );
        }
    }

    let mut parts: Vec<Part> = ALL_VOICES
        .into_iter()
        .map(|voice| Part { voice, cells: Vec::new() })
        .collect();
    for bar in plan.bars() {
        for index in 0..bar.syllable_count() {
            for part in parts.iter_mut() {
                if !bar.voicing.includes(part.voice) {
                    continue;
                }
                let (pitch, ornament) =
                    by_slot.get(&(part.voice, bar.number, index)).copied().ok_or_else(|| {
                        Error::Validation(format!(
                            "{} has no note for bar {} syllable {index}",
                            part.voice, bar.number
                        ))
                    })?;
                part.cells.push(SyllableCell {
                    voice: part.voice,
                    bar: bar.number,
                    index,
                    lyric: bar.syllables[index].clone(),
                    main: Note { pitch, duration: Dur::QUARTER },
                    ornament: ornament.map(|p| Note { pitch: p, duration: Dur::QUARTER }),
                    slur: ornament.is_some(),
                    overflow: Vec::new(),
                });
            }
        }
    }

    let mut score = Score { metadata, plan: plan.clone(), parts };
    rederive_rhythm(&mut score)?;
    Ok(score)
}

/// Recompute every duration from ornament placement: a syllable lasts two
/// quarters when the alto or the bass (among the bar's active voices) is
/// ornamented, one quarter otherwise; each voice splits the syllable evenly
/// over its notes.
pub fn rederive_rhythm(score: &mut Score) -> Result<()> {
    let plan = score.plan.clone();
    for bar in plan.bars() {
        for index in 0..bar.syllable_count() {
            let mut melodic_ornament = false;
            for v in [Voice::Alto, Voice::Bass] {
                if bar.voicing.includes(v) {
                    if let Some(cell) = score.cell(v, bar.number, index) {
                        melodic_ornament |= cell.ornament.is_some();
                    }
                }
            }
            let syllable = if melodic_ornament { Dur::HALF } else { Dur::QUARTER };
            for part in score.parts.iter_mut() {
                if !bar.voicing.includes(part.voice) {
                    continue;
                }
                let cell = part
                    .cells
                    .iter_mut()
                    .find(|c| c.bar == bar.number && c.index == index)
                    .ok_or_else(|| {
                        Error::Validation(format!(
                            "{} has no cell for bar {} syllable {index}",
                            part.voice, bar.number
                        ))
                    })?;
                if !cell.overflow.is_empty() {
                    return Err(Error::Validation(format!(
                        "cannot derive rhythm for the irregular cell at bar {} syllable {index}",
                        bar.number
                    )));
                }
                match cell.ornament.as_mut() {
                    Some(orn) => {
                        let half = syllable.halved()?;
                        cell.main.duration = half;
                        orn.duration = half;
                    }
                    None => cell.main.duration = syllable,
                }
            }
        }
    }
    Ok(())
}

/// Run the whole pipeline for a configuration.
pub fn assemble(cfg: &SummaConfig) -> Result<Score> {
    let plan = PiecePlan::summa();
    assemble_over(cfg, &plan)
}

/// Run the whole pipeline over an explicit plan.
pub fn assemble_over(cfg: &SummaConfig, plan: &PiecePlan) -> Result<Score> {
    plan.validate().map_err(|e| e.in_stage("plan"))?;
    let rc = cfg.resolve().map_err(|e| e.in_stage("config"))?;
    let alto = build_alto_resolved(&rc, plan).map_err(|e| e.in_stage("alto"))?;
    let bass = build_bass_resolved(&rc, plan).map_err(|e| e.in_stage("bass"))?;
    let soprano = build_t_voice_resolved(&rc, &alto, rc.soprano_position)
        .map_err(|e| e.in_stage("soprano"))?;
    let tenor =
        build_t_voice_resolved(&rc, &bass, rc.tenor_position).map_err(|e| e.in_stage("tenor"))?;
    let mut lines = [soprano, alto, tenor, bass];
    build_ornaments_resolved(&rc, &mut lines).map_err(|e| e.in_stage("ornaments"))?;
    if cfg.strip_ornamented_exits {
        strip_ornamented_exits(&mut lines, plan);
    }
    let metadata = Metadata {
        title: cfg.title.clone(),
        key: cfg.key.clone(),
        triad: cfg.t_scale.clone(),
    };
    let score = assign_rhythm(&lines, plan, metadata).map_err(|e| e.in_stage("rhythm"))?;
    score.validate().map_err(|e| e.in_stage("validation"))?;
    Ok(score)
}

/// One-line description of a generated score for command output.
#[derive(Debug, Clone, Serialize)]
pub struct GenerationSummary {
    pub bars: usize,
    pub sections: u32,
    pub syllables: usize,
    pub notes: usize,
    pub main_notes: usize,
    pub ornaments: usize,
    pub rotation_direction: RotationDirection,
    pub bass_transposition: i64,
    pub pattern_length: usize,
    pub drop_last_pattern_note: bool,
    pub strip_ornamented_exits: bool,
}

pub fn summarize(score: &Score, cfg: &SummaConfig) -> GenerationSummary {
    let main_notes: usize = score.parts.iter().map(|p| p.cells.len()).sum();
    let notes = score.note_count();
    let pattern_length = if cfg.drop_last_pattern_note {
        cfg.alto_pattern.len().saturating_sub(1)
    } else {
        cfg.alto_pattern.len()
    };
    GenerationSummary {
        bars: score.plan.bars().len(),
        sections: score.plan.sections(),
        syllables: score.plan.total_syllables(),
        notes,
        main_notes,
        ornaments: notes - main_notes,
        rotation_direction: cfg.rotation_direction,
        bass_transposition: cfg.bass_transposition,
        pattern_length,
        drop_last_pattern_note: cfg.drop_last_pattern_note,
        strip_ornamented_exits: cfg.strip_ornamented_exits,
    }
}

impl std::fmt::Display for GenerationSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} bars, {} sections, {} syllables, {} notes ({} main + {} ornaments) \
             [rotation={}, bass_transposition={}, pattern_length={}{}{}]",
            self.bars,
            self.sections,
            self.syllables,
            self.notes,
            self.main_notes,
            self.ornaments,
            self.rotation_direction,
            self.bass_transposition,
            self.pattern_length,
            if self.drop_last_pattern_note { ", drop_last_pattern_note" } else { "" },
            if self.strip_ornamented_exits { ", strip_ornamented_exits" } else { "" },
        )
    }
}
