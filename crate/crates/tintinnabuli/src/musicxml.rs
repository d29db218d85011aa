//! MusicXML 3.1 partwise export and import.
//!
//! Export is hand-built string writing with a fixed element order, so equal
//! scores produce byte-identical documents. Durations use a divisions value
//! of 2 (eighth-note resolution). Every measure carries an explicit time
//! signature of (bar quarters)/4, ornament pairs are slurred, lyrics sit on
//! the first note of each syllable, and inactive voices get whole-measure
//! rests.
//!
//! Import accepts documents from other tools as long as they stay on an
//! eighth-note grid: notes are grouped into syllables at lyric onsets, with
//! slurred continuations read as the ornament (and any further slurred notes
//! as overflow, as melismas in irregular editions produce). Missing lyrics
//! are tolerated; grouping then falls back to slur linkage alone. Structural
//! disagreements with the piece architecture inside the final two bars are
//! reported as anomalies rather than rejected, since editions differ there.

use crate::error::{Error, Result};
use crate::pitch::{Accidental, Letter, Pitch};
use crate::plan::{PiecePlan, Voice, ALL_VOICES};
use crate::score::{Dur, Metadata, Note, Part, Score, SyllableCell};
use std::fmt::Write as _;

const DIVISIONS: u32 = 2;

/// A score read from a document, plus any alignment anomalies the importer
/// chose to report instead of rejecting.
#[derive(Debug, Clone)]
pub struct ImportedScore {
    pub score: Score,
    pub anomalies: Vec<String>,
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn key_fifths(score: &Score) -> i32 {
    // count of sharps minus flats among the triad/key spellings; enough for
    // diatonic configurations
    let mut fifths = 0;
    for name in &score.metadata.triad {
        if let Ok(p) = name.parse::<Pitch>() {
            fifths += match p.spelling().accidental {
                Accidental::Sharp => 1,
                Accidental::Flat => -1,
                Accidental::Natural => 0,
            };
        }
    }
    // the triad rarely shows the signature; fall back to the conventional
    // names for the common keys
    match score.metadata.key.to_ascii_lowercase().as_str() {
        "e minor" | "g major" => 1,
        "a minor" | "c major" => 0,
        "d minor" | "f major" => -1,
        "b minor" | "d major" => 2,
        _ => fifths,
    }
}

fn note_type(eighths: u32) -> Option<&'static str> {
    match eighths {
        1 => Some("eighth"),
        2 => Some("quarter"),
        4 => Some("half"),
        8 => Some("whole"),
        _ => None,
    }
}

fn syllabic(prev_hyphen: bool, hyphen: bool) -> &'static str {
    match (prev_hyphen, hyphen) {
        (false, true) => "begin",
        (true, true) => "middle",
        (true, false) => "end",
        (false, false) => "single",
    }
}

fn write_note(
    out: &mut String,
    note: &Note,
    lyric: Option<(&str, &str)>,
    slur: Option<&'static str>,
) {
    let pitch = note.pitch;
    out.push_str("      <note>\n        <pitch>\n");
    let _ = writeln!(out, "          <step>{}</step>", match pitch.spelling().letter {
        Letter::C => "C",
        Letter::D => "D",
        Letter::E => "E",
        Letter::F => "F",
        Letter::G => "G",
        Letter::A => "A",
        Letter::B => "B",
    });
    let alter = pitch.spelling().accidental.alter();
    if alter != 0 {
        let _ = writeln!(out, "          <alter>{alter}</alter>");
    }
    let _ = writeln!(out, "          <octave>{}</octave>", pitch.octave());
    out.push_str("        </pitch>\n");
    let _ = writeln!(out, "        <duration>{}</duration>", note.duration.eighths());
    out.push_str("        <voice>1</voice>\n");
    if let Some(t) = note_type(note.duration.eighths()) {
        let _ = writeln!(out, "        <type>{t}</type>");
    }
    if let Some(kind) = slur {
        let _ = writeln!(
            out,
            "        <notations>\n          <slur number=\"1\" type=\"{kind}\"/>\n        </notations>"
        );
    }
    if let Some((syl, text)) = lyric {
        let _ = writeln!(
            out,
            "        <lyric number=\"1\">\n          <syllabic>{syl}</syllabic>\n          <text>{}</text>\n        </lyric>",
            xml_escape(text)
        );
    }
    out.push_str("      </note>\n");
}

/// Serialize a score as uncompressed partwise MusicXML 3.1.
pub fn export_musicxml(score: &Score) -> Result<String> {
    let mut out = String::with_capacity(1 << 20);
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(
        "<!DOCTYPE score-partwise PUBLIC \"-//Recordare//DTD MusicXML 3.1 Partwise//EN\" \"http://www.musicxml.org/dtds/partwise.dtd\">\n",
    );
    out.push_str("<score-partwise version=\"3.1\">\n");
    let _ = writeln!(
        out,
        "  <work>\n    <work-title>{}</work-title>\n  </work>",
        xml_escape(&score.metadata.title)
    );
    out.push_str("  <part-list>\n");
    for (i, voice) in ALL_VOICES.into_iter().enumerate() {
        let mut name = voice.name().to_string();
        name[..1].make_ascii_uppercase();
        let _ = writeln!(
            out,
            "    <score-part id=\"P{}\">\n      <part-name>{}</part-name>\n    </score-part>",
            i + 1,
            name
        );
    }
    out.push_str("  </part-list>\n");

    let fifths = key_fifths(score);
    for (i, voice) in ALL_VOICES.into_iter().enumerate() {
        let part = score.part(voice);
        let _ = writeln!(out, "  <part id=\"P{}\">", i + 1);
        let mut prev_hyphen = false;
        for bar in score.plan.bars() {
            let quarters = score.bar_quarters(bar.number)?;
            let _ = writeln!(out, "    <measure number=\"{}\">", bar.number);
            out.push_str("      <attributes>\n");
            if bar.number == 1 {
                let _ = writeln!(out, "        <divisions>{DIVISIONS}</divisions>");
                let _ = writeln!(
                    out,
                    "        <key>\n          <fifths>{fifths}</fifths>\n          <mode>minor</mode>\n        </key>"
                );
            }
            let _ = writeln!(
                out,
                "        <time>\n          <beats>{quarters}</beats>\n          <beat-type>4</beat-type>\n        </time>"
            );
            if bar.number == 1 {
                out.push_str(match voice {
                    Voice::Soprano | Voice::Alto => {
                        "        <clef>\n          <sign>G</sign>\n          <line>2</line>\n        </clef>\n"
                    }
                    Voice::Tenor => {
                        "        <clef>\n          <sign>G</sign>\n          <line>2</line>\n          <clef-octave-change>-1</clef-octave-change>\n        </clef>\n"
                    }
                    Voice::Bass => {
                        "        <clef>\n          <sign>F</sign>\n          <line>4</line>\n        </clef>\n"
                    }
                });
            }
            out.push_str("      </attributes>\n");

            if !bar.voicing.includes(voice) {
                let _ = writeln!(
                    out,
                    "      <note>\n        <rest measure=\"yes\"/>\n        <duration>{}</duration>\n        <voice>1</voice>\n      </note>",
                    quarters * DIVISIONS
                );
                let _ = writeln!(out, "    </measure>");
                continue;
            }

            for cell in part.cells.iter().filter(|c| c.bar == bar.number) {
                let hyphen = cell.lyric.ends_with('-');
                let text = cell.lyric.trim_end_matches('-');
                let syl = syllabic(prev_hyphen, hyphen);
                prev_hyphen = hyphen;
                let mut tail: Vec<&Note> = Vec::new();
                tail.extend(cell.ornament.as_ref());
                tail.extend(cell.overflow.iter());
                let slur_start = if tail.is_empty() { None } else { Some("start") };
                write_note(&mut out, &cell.main, Some((syl, text)), slur_start);
                for (k, note) in tail.iter().enumerate() {
                    let slur = if k + 1 == tail.len() { Some("stop") } else { None };
                    write_note(&mut out, note, None, slur);
                }
            }
            out.push_str("    </measure>\n");
        }
        out.push_str("  </part>\n");
    }
    out.push_str("</score-partwise>\n");
    Ok(out)
}

struct RawNote {
    pitch: Pitch,
    duration: Dur,
    lyric: Option<String>,
    slur_start: bool,
    slur_stop: bool,
}

fn read_pitch(node: roxmltree::Node) -> Result<Pitch> {
    let mut step = None;
    let mut alter = 0i16;
    let mut octave = None;
    for child in node.children().filter(|c| c.is_element()) {
        match child.tag_name().name() {
            "step" => step = child.text().map(str::trim).map(str::to_string),
            "alter" => {
                alter = child
                    .text()
                    .unwrap_or("")
                    .trim()
                    .parse()
                    .map_err(|_| Error::Import("unreadable <alter> value".into()))?
            }
            "octave" => {
                octave = Some(
                    child
                        .text()
                        .unwrap_or("")
                        .trim()
                        .parse::<i16>()
                        .map_err(|_| Error::Import("unreadable <octave> value".into()))?,
                )
            }
            _ => {}
        }
    }
    let step = step.ok_or_else(|| Error::Import("note without <step>".into()))?;
    let octave = octave.ok_or_else(|| Error::Import("note without <octave>".into()))?;
    let letter = match step.as_str() {
        "C" => Letter::C,
        "D" => Letter::D,
        "E" => Letter::E,
        "F" => Letter::F,
        "G" => Letter::G,
        "A" => Letter::A,
        "B" => Letter::B,
        other => return Err(Error::Import(format!("unknown step {other:?}"))),
    };
    let accidental = match alter {
        -1 => Accidental::Flat,
        0 => Accidental::Natural,
        1 => Accidental::Sharp,
        other => return Err(Error::Import(format!("unsupported alteration {other}"))),
    };
    Pitch::new(letter, accidental, octave).map_err(|e| Error::Import(e.to_string()))
}

fn read_lyric(node: roxmltree::Node) -> Option<String> {
    let mut syllabic = "single".to_string();
    let mut text = None;
    for child in node.children().filter(|c| c.is_element()) {
        match child.tag_name().name() {
            "syllabic" => syllabic = child.text().unwrap_or("single").trim().to_string(),
            "text" => text = Some(child.text().unwrap_or("").to_string()),
            _ => {}
        }
    }
    let mut text = text?;
    if matches!(syllabic.as_str(), "begin" | "middle") {
        text.push('-');
    }
    Some(text)
}

/// Parse an uncompressed MusicXML document into a score, validating it
/// against the piece architecture.
pub fn import_musicxml(xml: &str) -> Result<ImportedScore> {
    import_musicxml_with_plan(xml, &PiecePlan::summa())
}

/// Parse against an explicit plan.
pub fn import_musicxml_with_plan(xml: &str, plan: &PiecePlan) -> Result<ImportedScore> {
    let options = roxmltree::ParsingOptions { allow_dtd: true, ..Default::default() };
    let doc = roxmltree::Document::parse_with_options(xml, options)
        .map_err(|e| Error::Import(format!("malformed XML: {e}")))?;
    let root = doc.root_element();
    if root.tag_name().name() != "score-partwise" {
        return Err(Error::Import(format!(
            "expected a <score-partwise> document, found <{}>",
            root.tag_name().name()
        )));
    }

    let mut title = String::new();
    if let Some(work) = root.children().find(|c| c.has_tag_name("work")) {
        if let Some(t) = work.children().find(|c| c.has_tag_name("work-title")) {
            title = t.text().unwrap_or("").to_string();
        }
    }

    // part-list: id -> voice
    let part_list = root
        .children()
        .find(|c| c.has_tag_name("part-list"))
        .ok_or_else(|| Error::Import("document has no <part-list>".into()))?;
    let mut id_to_voice: Vec<(String, Voice)> = Vec::new();
    for sp in part_list.children().filter(|c| c.has_tag_name("score-part")) {
        let id = sp
            .attribute("id")
            .ok_or_else(|| Error::Import("<score-part> without id".into()))?
            .to_string();
        let name = sp
            .children()
            .find(|c| c.has_tag_name("part-name"))
            .and_then(|n| n.text())
            .unwrap_or("")
            .trim()
            .to_string();
        let voice = Voice::parse(&name)
            .map_err(|_| Error::Import(format!("part {id}: unrecognized part name {name:?}")))?;
        id_to_voice.push((id, voice));
    }
    {
        let mut voices: Vec<Voice> = id_to_voice.iter().map(|(_, v)| *v).collect();
        voices.sort();
        voices.dedup();
        if voices.len() != 4 {
            return Err(Error::Import(format!(
                "expected the four voices soprano, alto, tenor, bass; found {} distinct parts",
                voices.len()
            )));
        }
    }

    let mut anomalies: Vec<String> = Vec::new();
    let final_region_start = plan.bars().len().saturating_sub(1) as u32; // last two bars
    let mut parts: Vec<Part> = ALL_VOICES
        .into_iter()
        .map(|voice| Part { voice, cells: Vec::new() })
        .collect();

    for part_node in root.children().filter(|c| c.has_tag_name("part")) {
        let id = part_node
            .attribute("id")
            .ok_or_else(|| Error::Import("<part> without id".into()))?;
        let voice = id_to_voice
            .iter()
            .find(|(pid, _)| pid == id)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::Import(format!("part {id} missing from the part-list")))?;

        let measures: Vec<roxmltree::Node> =
            part_node.children().filter(|c| c.has_tag_name("measure")).collect();
        if measures.len() != plan.bars().len() {
            return Err(Error::Import(format!(
                "{voice}: document has {} measures but the piece architecture lists {} bars",
                measures.len(),
                plan.bars().len()
            )));
        }

        let mut divisions: u32 = 1;
        for (mi, measure) in measures.iter().enumerate() {
            let bar_number = mi as u32 + 1;
            let plan_bar = plan.bar(bar_number).expect("bar count checked");
            let mut raw: Vec<RawNote> = Vec::new();
            let mut whole_rest = false;

            for node in measure.children().filter(|c| c.is_element()) {
                match node.tag_name().name() {
                    "attributes" => {
                        if let Some(d) = node.children().find(|c| c.has_tag_name("divisions")) {
                            divisions = d
                                .text()
                                .unwrap_or("")
                                .trim()
                                .parse()
                                .map_err(|_| Error::Import("unreadable <divisions>".into()))?;
                            if divisions == 0 {
                                return Err(Error::Import("divisions must be positive".into()));
                            }
                        }
                    }
                    "note" => {
                        if node.children().any(|c| c.has_tag_name("chord")) {
                            return Err(Error::Import(format!(
                                "{voice} bar {bar_number}: chords are not supported"
                            )));
                        }
                        if node.children().any(|c| c.has_tag_name("rest")) {
                            whole_rest = true;
                            continue;
                        }
                        let pitch_node = node
                            .children()
                            .find(|c| c.has_tag_name("pitch"))
                            .ok_or_else(|| {
                                Error::Import(format!(
                                    "{voice} bar {bar_number}: note without <pitch> or <rest>"
                                ))
                            })?;
                        let pitch = read_pitch(pitch_node)?;
                        let dur_divs: u64 = node
                            .children()
                            .find(|c| c.has_tag_name("duration"))
                            .and_then(|d| d.text())
                            .unwrap_or("")
                            .trim()
                            .parse()
                            .map_err(|_| {
                                Error::Import(format!(
                                    "{voice} bar {bar_number}: note without a readable <duration>"
                                ))
                            })?;
                        let eighths_num = dur_divs * 2;
                        if !eighths_num.is_multiple_of(divisions as u64) {
                            return Err(Error::Import(format!(
                                "{voice} bar {bar_number}: duration {dur_divs}/{divisions} is finer than the eighth-note grid"
                            )));
                        }
                        let duration = Dur::parse(&format!("{}/2", eighths_num / divisions as u64))
                            .map_err(|e| Error::Import(e.to_string()))?;
                        let lyric = node
                            .children()
                            .find(|c| c.has_tag_name("lyric"))
                            .and_then(read_lyric);
                        let mut slur_start = false;
                        let mut slur_stop = false;
                        if let Some(notations) =
                            node.children().find(|c| c.has_tag_name("notations"))
                        {
                            for slur in notations.children().filter(|c| c.has_tag_name("slur")) {
                                match slur.attribute("type") {
                                    Some("start") => slur_start = true,
                                    Some("stop") => slur_stop = true,
                                    _ => {}
                                }
                            }
                        }
                        raw.push(RawNote { pitch, duration, lyric, slur_start, slur_stop });
                    }
                    "backup" | "forward" => {
                        return Err(Error::Import(format!(
                            "{voice} bar {bar_number}: multi-voice measures (<backup>/<forward>) are not supported"
                        )));
                    }
                    _ => {}
                }
            }

            let active = plan_bar.voicing.includes(voice);
            if raw.is_empty() {
                if active && !whole_rest {
                    return Err(Error::Import(format!(
                        "{voice} bar {bar_number}: empty measure where the architecture expects {} syllables",
                        plan_bar.syllable_count()
                    )));
                }
                if active && whole_rest {
                    let msg = format!(
                        "{voice} bar {bar_number}: rest where the architecture expects {} syllables",
                        plan_bar.syllable_count()
                    );
                    if bar_number >= final_region_start {
                        anomalies.push(msg);
                    } else {
                        return Err(Error::Import(msg));
                    }
                }
                continue;
            }
            if !active {
                let msg = format!(
                    "{voice} bar {bar_number}: notes present where the architecture lists {}",
                    plan_bar.voicing.label()
                );
                if bar_number >= final_region_start {
                    anomalies.push(msg);
                } else {
                    return Err(Error::Import(msg));
                }
            }

            // group notes into syllables: a lyric onset or a closed slur
            // starts a new cell
            let mut cells: Vec<SyllableCell> = Vec::new();
            let mut open_slur = false;
            for note in raw {
                let starts_cell = note.lyric.is_some() || !open_slur;
                if starts_cell {
                    let index = cells.len();
                    let lyric = note
                        .lyric
                        .clone()
                        .or_else(|| plan_bar.syllables.get(index).cloned())
                        .unwrap_or_default();
                    cells.push(SyllableCell {
                        voice,
                        bar: bar_number,
                        index,
                        lyric,
                        main: Note { pitch: note.pitch, duration: note.duration },
                        ornament: None,
                        slur: false,
                        overflow: Vec::new(),
                    });
                } else {
                    let cell = cells.last_mut().expect("open slur implies a cell");
                    let n = Note { pitch: note.pitch, duration: note.duration };
                    if cell.ornament.is_none() {
                        cell.ornament = Some(n);
                        cell.slur = true;
                    } else {
                        cell.overflow.push(n);
                    }
                }
                if note.slur_start {
                    open_slur = true;
                }
                if note.slur_stop {
                    open_slur = false;
                }
            }

            if cells.len() != plan_bar.syllable_count() {
                let msg = format!(
                    "{voice} bar {bar_number}: grouped {} syllables but the piece architecture lists {}",
                    cells.len(),
                    plan_bar.syllable_count()
                );
                if bar_number >= final_region_start {
                    anomalies.push(msg);
                } else {
                    return Err(Error::Import(msg));
                }
            }
            if !cells.iter().all(|c| c.overflow.is_empty()) {
                anomalies.push(format!(
                    "{voice} bar {bar_number}: melisma grouped as note overflow"
                ));
            }
            parts
                .iter_mut()
                .find(|p| p.voice == voice)
                .expect("four fixed parts")
                .cells
                .extend(cells);
        }
    }

    let score = Score {
        metadata: Metadata {
            title,
            key: "E minor".into(),
            triad: vec!["E4".into(), "G4".into(), "B4".into()],
        },
        plan: plan.clone(),
        parts,
    };
    Ok(ImportedScore { score, anomalies })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summa::{assemble, SummaConfig};

    #[test]
    fn export_is_deterministic() {
        let score = assemble(&SummaConfig::default()).unwrap();
        let a = export_musicxml(&score).unwrap();
        let b = export_musicxml(&score).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn round_trip_is_identity_on_the_default_score() {
        let score = assemble(&SummaConfig::default()).unwrap();
        let xml = export_musicxml(&score).unwrap();
        let imported = import_musicxml(&xml).unwrap();
        assert!(imported.anomalies.is_empty(), "{:?}", imported.anomalies);
        assert_eq!(score, imported.score);
    }

    #[test]
    fn bar_one_has_rests_for_the_lower_voices() {
        let score = assemble(&SummaConfig::default()).unwrap();
        let xml = export_musicxml(&score).unwrap();
        // tenor part: first measure is a whole-bar rest
        let tenor_part = xml.split("<part id=\"P3\">").nth(1).unwrap();
        let first_measure = tenor_part.split("</measure>").next().unwrap();
        assert!(first_measure.contains("<rest measure=\"yes\"/>"));
        // soprano part: first measure carries the opening lyric
        let sop_part = xml.split("<part id=\"P1\">").nth(1).unwrap();
        let first_measure = sop_part.split("</measure>").next().unwrap();
        assert!(first_measure.contains("<text>Cre</text>"));
        assert!(first_measure.contains("<syllabic>begin</syllabic>"));
    }

    #[test]
    fn ornament_pairs_are_slurred_eighths_under_one_lyric() {
        let cfg = SummaConfig::default();
        let score = assemble(&cfg).unwrap();
        // find a soprano cell with an ornament and syllable duration 1
        let cell = score
            .part(Voice::Soprano)
            .cells
            .iter()
            .find(|c| c.ornament.is_some() && c.duration() == Dur::QUARTER)
            .expect("the reconstruction has eighth-note ornament pairs");
        assert_eq!(cell.main.duration, Dur::EIGHTH);
        let xml = export_musicxml(&score).unwrap();
        assert!(xml.contains("<slur number=\"1\" type=\"start\"/>"));
        assert!(xml.contains("<slur number=\"1\" type=\"stop\"/>"));
        assert!(xml.contains("<type>eighth</type>"));
    }

    #[test]
    fn ornament_free_scores_have_no_slurs() {
        let cfg = SummaConfig {
            alto_ornament_pattern: vec![None; 16],
            bass_ornament_pattern: vec![None; 16],
            soprano_ornament_bounds: crate::summa::BoundsConfig {
                note_low: Some("C8".into()),
                note_high: Some("C8".into()),
                next_low: None,
                next_high: None,
            },
            tenor_ornament_bounds: crate::summa::BoundsConfig {
                note_low: Some("C8".into()),
                note_high: Some("C8".into()),
                next_low: None,
                next_high: None,
            },
            ..SummaConfig::default()
        };
        let score = assemble(&cfg).unwrap();
        assert_eq!(score.note_count(), 1022);
        let xml = export_musicxml(&score).unwrap();
        assert!(!xml.contains("<slur"));
    }

    #[test]
    fn explicit_time_signatures_per_bar() {
        let score = assemble(&SummaConfig::default()).unwrap();
        let xml = export_musicxml(&score).unwrap();
        let count = xml.matches("<beats>").count();
        assert_eq!(count, 49 * 4);
    }

    #[test]
    fn import_rejects_wrong_bar_count() {
        let score = assemble(&SummaConfig::default()).unwrap();
        let xml = export_musicxml(&score).unwrap();
        // drop the final measure block of every part
        let mut chunks = xml.split("    <measure number=\"49\">");
        let mut truncated = chunks.next().unwrap().to_string();
        for chunk in chunks {
            let after = chunk.split_once("    </measure>\n").unwrap().1;
            truncated.push_str(after);
        }
        let err = import_musicxml(&truncated).unwrap_err();
        assert!(err.to_string().contains("48 measures"), "{err}");
    }

    #[test]
    fn import_rejects_garbage() {
        assert!(import_musicxml("not xml").is_err());
        assert!(import_musicxml("<score-timewise/>").is_err());
    }

    #[test]
    fn melisma_imports_as_overflow_and_is_flagged() {
        // emulate an edition whose final bars carry a melisma: a third
        // slurred note on one syllable
        let mut score = assemble(&SummaConfig::default()).unwrap();
        {
            let part = score.part_mut(Voice::Alto);
            let cell = part
                .cells
                .iter_mut()
                .find(|c| c.bar == 48 && c.ornament.is_some())
                .expect("the default alto ornaments a bar-48 syllable");
            cell.overflow.push(cell.main);
        }
        let xml = export_musicxml(&score).unwrap();
        let imported = import_musicxml(&xml).unwrap();
        assert!(
            imported.anomalies.iter().any(|a| a.contains("melisma")),
            "{:?}",
            imported.anomalies
        );
        let cell = imported
            .score
            .part(Voice::Alto)
            .cells
            .iter()
            .find(|c| c.bar == 48 && !c.overflow.is_empty())
            .expect("the overflow note survives the round trip");
        assert_eq!(cell.overflow.len(), 1);
    }

    #[test]
    fn unslurred_extra_notes_break_the_grouping() {
        // strip the slur off the alto's first ornament pair: the ornament
        // note then opens its own syllable and the bar no longer fits
        let score = assemble(&SummaConfig::default()).unwrap();
        let xml = export_musicxml(&score).unwrap();
        let (before, alto_part) = xml.split_once("<part id=\"P2\">").unwrap();
        let (first_measure, rest) = alto_part.split_once("</measure>").unwrap();
        let stripped = first_measure
            .replace("        <notations>\n          <slur number=\"1\" type=\"start\"/>\n        </notations>\n", "")
            .replace("        <notations>\n          <slur number=\"1\" type=\"stop\"/>\n        </notations>\n", "");
        assert_ne!(stripped, first_measure, "surgery removed the slur");
        let doc = format!("{before}<part id=\"P2\">{stripped}</measure>{rest}");
        // bar 1 of the alto carries two ornaments, so two extra cells appear
        let err = import_musicxml(&doc).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("alto bar 1"), "{msg}");
        assert!(msg.contains("grouped 9 syllables"), "{msg}");
    }

    #[test]
    fn foreign_divisions_are_rescaled() {
        // a document written at a different divisions value imports as long
        // as it stays on the eighth-note grid
        let score = assemble(&SummaConfig::default()).unwrap();
        let xml = export_musicxml(&score).unwrap();
        let coarse = xml
            .replace("<divisions>2</divisions>", "<divisions>8</divisions>")
            .split("<duration>")
            .enumerate()
            .map(|(i, chunk)| {
                if i == 0 {
                    return chunk.to_string();
                }
                let (n, rest) = chunk.split_once("</duration>").unwrap();
                format!("<duration>{}</duration>{rest}", n.parse::<u32>().unwrap() * 4)
            })
            .collect::<String>();
        let imported = import_musicxml(&coarse).unwrap();
        assert_eq!(imported.score, score);
    }
}
