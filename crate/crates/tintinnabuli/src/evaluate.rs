//! Syllable-by-syllable comparison of a reconstruction against a reference.
//!
//! Differences are classified per slot: a main-pitch mismatch is a pitch
//! error; an ornament present only in the reconstruction is an insertion,
//! only in the reference a deletion; ornaments present on both sides with
//! different pitches count as a pitch error on the ornament; and slots whose
//! pitch content agrees but whose durations differ yield duration errors.
//! Duration differences caused by an ornament mismatch on the same slot are
//! not double-counted. One-sided slots (a voice singing where the other
//! score is silent, or melisma overflow) are counted as ornament
//! insertions/deletions, one per notehead.

use crate::error::{Error, Result};
use crate::pitch::Pitch;
use crate::plan::{Voice, ALL_VOICES};
use crate::score::{Note, Score, SyllableCell};
use crate::summa::rederive_rhythm;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    Pitch,
    OrnamentInsertion,
    OrnamentDeletion,
    Duration,
}

impl ErrorKind {
    pub fn label(self) -> &'static str {
        match self {
            ErrorKind::Pitch => "pitch",
            ErrorKind::OrnamentInsertion => "ornament-insertion",
            ErrorKind::OrnamentDeletion => "ornament-deletion",
            ErrorKind::Duration => "duration",
        }
    }
}

/// One classified difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorRecord {
    pub voice: Voice,
    pub bar: u32,
    pub index: usize,
    pub kind: ErrorKind,
    /// The differing value on the reconstruction side, if any.
    pub reconstruction: Option<String>,
    /// The differing value on the reference side, if any.
    pub reference: Option<String>,
    /// Whether the record concerns the ornament notehead rather than the
    /// main note. An ornament-pitch mismatch is classified as a pitch error
    /// with this flag set, not as an insertion/deletion pair.
    pub on_ornament: bool,
    /// Whether the slot lies in the freely composed final two bars.
    pub in_ending: bool,
}

/// One (voice, bar, syllable) slot with the cells of both scores.
#[derive(Debug, Clone, Copy)]
pub struct AlignedSlot<'a> {
    pub voice: Voice,
    pub bar: u32,
    pub index: usize,
    pub reconstruction: Option<&'a SyllableCell>,
    pub reference: Option<&'a SyllableCell>,
}

#[derive(Debug, Clone)]
pub struct Alignment<'a> {
    pub slots: Vec<AlignedSlot<'a>>,
    /// Descriptions of slots present on only one side.
    pub unpaired: Vec<String>,
    first_ending_bar: u32,
}

/// Pair the two scores slot for slot. Fails when the bar architectures
/// disagree (bar counts, syllable counts or voicings).
pub fn align<'a>(reconstruction: &'a Score, reference: &'a Score) -> Result<Alignment<'a>> {
    let a = reconstruction.plan.bars();
    let b = reference.plan.bars();
    if a.len() != b.len() {
        return Err(Error::Alignment(format!(
            "reconstruction has {} bars, reference {}",
            a.len(),
            b.len()
        )));
    }
    for (x, y) in a.iter().zip(b) {
        if x.syllable_count() != y.syllable_count() || x.voicing != y.voicing {
            return Err(Error::Alignment(format!(
                "bar {}: {} x {} syllables vs {} x {} syllables",
                x.number,
                x.voicing.label(),
                x.syllable_count(),
                y.voicing.label(),
                y.syllable_count()
            )));
        }
    }

    let mut keys: BTreeSet<(u32, usize, Voice)> = BTreeSet::new();
    let mut recon_cells: BTreeMap<(u32, usize, Voice), &SyllableCell> = BTreeMap::new();
    let mut ref_cells: BTreeMap<(u32, usize, Voice), &SyllableCell> = BTreeMap::new();
    for (score, map) in [(reconstruction, &mut recon_cells), (reference, &mut ref_cells)] {
        for part in &score.parts {
            for cell in &part.cells {
                let key = (cell.bar, cell.index, part.voice);
                keys.insert(key);
                map.insert(key, cell);
            }
        }
    }

    let mut slots = Vec::with_capacity(keys.len());
    let mut unpaired = Vec::new();
    for (bar, index, voice) in keys {
        let r = recon_cells.get(&(bar, index, voice)).copied();
        let f = ref_cells.get(&(bar, index, voice)).copied();
        match (r, f) {
            (Some(_), None) => unpaired.push(format!(
                "{voice} bar {bar} syllable {index}: only the reconstruction sings"
            )),
            (None, Some(_)) => unpaired.push(format!(
                "{voice} bar {bar} syllable {index}: only the reference sings"
            )),
            _ => {}
        }
        slots.push(AlignedSlot { voice, bar, index, reconstruction: r, reference: f });
    }
    Ok(Alignment {
        slots,
        unpaired,
        first_ending_bar: (a.len() as u32).saturating_sub(1),
    })
}

fn cell_notes(cell: &SyllableCell) -> Vec<&Note> {
    let mut notes = vec![&cell.main];
    notes.extend(cell.ornament.as_ref());
    notes.extend(cell.overflow.iter());
    notes
}

/// Classify every aligned slot. Records come out ordered by bar, syllable,
/// voice and kind.
pub fn classify(alignment: &Alignment) -> Vec<ErrorRecord> {
    let mut records = Vec::new();
    for slot in &alignment.slots {
        let in_ending = slot.bar >= alignment.first_ending_bar;
        let mut push = |kind: ErrorKind, recon: Option<String>, reference: Option<String>, on_ornament: bool| {
            records.push(ErrorRecord {
                voice: slot.voice,
                bar: slot.bar,
                index: slot.index,
                kind,
                reconstruction: recon,
                reference,
                on_ornament,
                in_ending,
            });
        };
        match (slot.reconstruction, slot.reference) {
            (None, None) => {}
            (Some(r), None) => {
                for (k, note) in cell_notes(r).into_iter().enumerate() {
                    push(ErrorKind::OrnamentInsertion, Some(note.pitch.to_string()), None, k > 0);
                }
            }
            (None, Some(f)) => {
                for (k, note) in cell_notes(f).into_iter().enumerate() {
                    push(ErrorKind::OrnamentDeletion, None, Some(note.pitch.to_string()), k > 0);
                }
            }
            (Some(r), Some(f)) => {
                let mut presence_differs = false;
                if r.main.pitch != f.main.pitch {
                    push(
                        ErrorKind::Pitch,
                        Some(r.main.pitch.to_string()),
                        Some(f.main.pitch.to_string()),
                        false,
                    );
                }
                match (&r.ornament, &f.ornament) {
                    (Some(ro), None) => {
                        presence_differs = true;
                        push(ErrorKind::OrnamentInsertion, Some(ro.pitch.to_string()), None, true);
                    }
                    (None, Some(fo)) => {
                        presence_differs = true;
                        push(ErrorKind::OrnamentDeletion, None, Some(fo.pitch.to_string()), true);
                    }
                    (Some(ro), Some(fo)) if ro.pitch != fo.pitch => {
                        push(
                            ErrorKind::Pitch,
                            Some(ro.pitch.to_string()),
                            Some(fo.pitch.to_string()),
                            true,
                        );
                    }
                    _ => {}
                }
                // overflow imbalance: surplus notes on either side
                let (rn, fn_) = (r.overflow.len(), f.overflow.len());
                if rn != fn_ {
                    presence_differs = true;
                    for note in r.overflow.iter().skip(fn_) {
                        push(ErrorKind::OrnamentInsertion, Some(note.pitch.to_string()), None, true);
                    }
                    for note in f.overflow.iter().skip(rn) {
                        push(ErrorKind::OrnamentDeletion, None, Some(note.pitch.to_string()), true);
                    }
                }
                // a duration difference is only independent when the slot's
                // note inventory agrees
                if !presence_differs && r.duration() != f.duration() {
                    push(
                        ErrorKind::Duration,
                        Some(r.duration().to_string()),
                        Some(f.duration().to_string()),
                        false,
                    );
                } else if !presence_differs && r.main.duration != f.main.duration {
                    push(
                        ErrorKind::Duration,
                        Some(r.main.duration.to_string()),
                        Some(f.main.duration.to_string()),
                        false,
                    );
                }
            }
        }
    }
    records
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct KindCounts {
    pub pitch: usize,
    pub ornament_insertions: usize,
    pub ornament_deletions: usize,
    pub duration: usize,
}

impl KindCounts {
    fn add(&mut self, kind: ErrorKind) {
        match kind {
            ErrorKind::Pitch => self.pitch += 1,
            ErrorKind::OrnamentInsertion => self.ornament_insertions += 1,
            ErrorKind::OrnamentDeletion => self.ornament_deletions += 1,
            ErrorKind::Duration => self.duration += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pitch + self.ornament_insertions + self.ornament_deletions + self.duration
    }

    pub fn non_duration(&self) -> usize {
        self.total() - self.duration
    }
}

/// Aggregate statistics over a classification.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub records: Vec<ErrorRecord>,
    pub per_voice: BTreeMap<Voice, KindCounts>,
    pub totals: KindCounts,
    /// Distinct noteheads carrying at least one error.
    pub notes_with_errors: usize,
    /// Records that demand an actual correction (everything but duration).
    pub notes_to_correct: usize,
    /// Noteheads in the reconstruction.
    pub total_notes: usize,
    pub pct_notes_with_errors: f64,
    pub pct_notes_to_correct: f64,
    /// Duration records sharing a syllable with an insertion/deletion in
    /// another voice, i.e. those an ornament correction would resolve.
    pub duration_errors_explained: usize,
    /// Records falling in the freely composed final two bars.
    pub ending_records: usize,
    pub unpaired_slots: Vec<String>,
}

/// Summarize classified records against the reconstruction they came from.
pub fn summarize(records: &[ErrorRecord], reconstruction: &Score, unpaired: Vec<String>) -> ErrorReport {
    let mut per_voice: BTreeMap<Voice, KindCounts> = BTreeMap::new();
    for v in ALL_VOICES {
        per_voice.insert(v, KindCounts::default());
    }
    let mut totals = KindCounts::default();
    // main-note records at one slot share a notehead; each ornament-side
    // record touches its own notehead
    let mut touched_main: BTreeSet<(Voice, u32, usize)> = BTreeSet::new();
    let mut ornament_noteheads = 0usize;
    let mut ins_del_slots: BTreeSet<(u32, usize, Voice)> = BTreeSet::new();
    for r in records {
        per_voice.get_mut(&r.voice).expect("all voices present").add(r.kind);
        totals.add(r.kind);
        if r.on_ornament {
            ornament_noteheads += 1;
        } else {
            touched_main.insert((r.voice, r.bar, r.index));
        }
        if matches!(r.kind, ErrorKind::OrnamentInsertion | ErrorKind::OrnamentDeletion) {
            ins_del_slots.insert((r.bar, r.index, r.voice));
        }
    }
    let duration_errors_explained = records
        .iter()
        .filter(|r| r.kind == ErrorKind::Duration)
        .filter(|r| {
            ins_del_slots
                .range((r.bar, r.index, Voice::Soprano)..=(r.bar, r.index, Voice::Bass))
                .any(|(_, _, v)| *v != r.voice)
        })
        .count();
    let total_notes = reconstruction.note_count();
    let notes_with_errors = touched_main.len() + ornament_noteheads;
    let notes_to_correct = totals.non_duration();
    ErrorReport {
        records: records.to_vec(),
        per_voice,
        totals,
        notes_with_errors,
        notes_to_correct,
        total_notes,
        pct_notes_with_errors: 100.0 * notes_with_errors as f64 / total_notes as f64,
        pct_notes_to_correct: 100.0 * notes_to_correct as f64 / total_notes as f64,
        duration_errors_explained,
        ending_records: records.iter().filter(|r| r.in_ending).count(),
        unpaired_slots: unpaired,
    }
}

/// Evaluate a reconstruction against a reference in one call.
pub fn evaluate(reconstruction: &Score, reference: &Score) -> Result<ErrorReport> {
    let alignment = align(reconstruction, reference)?;
    let records = classify(&alignment);
    let unpaired = alignment.unpaired.clone();
    Ok(summarize(&records, reconstruction, unpaired))
}

impl ErrorReport {
    /// Drop all records from the final two bars and recompute the counts.
    pub fn without_ending(&self, reconstruction: &Score) -> ErrorReport {
        let records: Vec<ErrorRecord> =
            self.records.iter().filter(|r| !r.in_ending).cloned().collect();
        summarize(&records, reconstruction, self.unpaired_slots.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

impl fmt::Display for ErrorReport {
    /// The frequency table: one row per voice, one column per error kind.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:8} {:>6} {:>10} {:>9} {:>9} {:>7}",
            "voice", "pitch", "insertion", "deletion", "duration", "total"
        )?;
        for v in ALL_VOICES {
            let c = self.per_voice[&v];
            writeln!(
                f,
                "{:8} {:>6} {:>10} {:>9} {:>9} {:>7}",
                v.name(),
                c.pitch,
                c.ornament_insertions,
                c.ornament_deletions,
                c.duration,
                c.total()
            )?;
        }
        let t = self.totals;
        writeln!(
            f,
            "{:8} {:>6} {:>10} {:>9} {:>9} {:>7}",
            "all",
            t.pitch,
            t.ornament_insertions,
            t.ornament_deletions,
            t.duration,
            t.total()
        )?;
        writeln!(
            f,
            "notes with errors: {} of {} ({:.1}%)",
            self.notes_with_errors, self.total_notes, self.pct_notes_with_errors
        )?;
        writeln!(
            f,
            "notes to correct:  {} ({:.1}%), {} of {} duration errors explained by ornament mismatches",
            self.notes_to_correct,
            self.pct_notes_to_correct,
            self.duration_errors_explained,
            self.totals.duration
        )?;
        if self.ending_records > 0 {
            writeln!(f, "records in the freely composed final two bars: {}", self.ending_records)?;
        }
        for u in &self.unpaired_slots {
            writeln!(f, "unpaired: {u}")?;
        }
        Ok(())
    }
}

/// A cell replacement: the slot takes the given pitch content and the score's
/// rhythm is re-derived afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correction {
    pub voice: Voice,
    pub bar: u32,
    pub index: usize,
    pub main_pitch: Pitch,
    pub ornament_pitch: Option<Pitch>,
}

/// Build the correction list that reconciles the reconstruction's
/// non-duration errors with the reference.
pub fn derive_corrections(reconstruction: &Score, reference: &Score) -> Result<Vec<Correction>> {
    let alignment = align(reconstruction, reference)?;
    let records = classify(&alignment);
    let mut slots: BTreeSet<(u32, usize, Voice)> = BTreeSet::new();
    for r in &records {
        if r.kind != ErrorKind::Duration {
            slots.insert((r.bar, r.index, r.voice));
        }
    }
    let mut corrections = Vec::new();
    for (bar, index, voice) in slots {
        let Some(ref_cell) = reference.cell(voice, bar, index) else {
            // nothing to copy from; the slot exists only in the reconstruction
            continue;
        };
        corrections.push(Correction {
            voice,
            bar,
            index,
            main_pitch: ref_cell.main.pitch,
            ornament_pitch: ref_cell.ornament.map(|n| n.pitch),
        });
    }
    Ok(corrections)
}

/// Apply cell replacements and re-derive the rhythm, so ornament fixes also
/// resolve the duration errors they caused.
pub fn apply_corrections(score: &Score, corrections: &[Correction]) -> Result<Score> {
    let mut out = score.clone();
    for c in corrections {
        let part = out.part_mut(c.voice);
        let cell = part
            .cells
            .iter_mut()
            .find(|cell| cell.bar == c.bar && cell.index == c.index)
            .ok_or_else(|| {
                Error::InvalidSlot(format!("{} bar {} syllable {}", c.voice, c.bar, c.index))
            })?;
        cell.main.pitch = c.main_pitch;
        cell.ornament = c.ornament_pitch.map(|pitch| Note { pitch, duration: cell.main.duration });
        cell.slur = cell.ornament.is_some();
    }
    rederive_rhythm(&mut out)?;
    Ok(out)
}
