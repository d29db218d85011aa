//! Piano-roll SVG plots.
//!
//! Diatonic pitch runs vertically, time horizontally in syllables. Main
//! notes are dots, ornaments plus signs. Timeline mode draws a whole voice
//! with section boundary ticks; overlay mode stacks one trace per section so
//! the repetitions of the underlying pattern sit on top of each other.

use std::fmt::Write as _;
use tintinnabuli::plan::Voice;
use tintinnabuli::score::Score;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PlotMode {
    Timeline,
    Overlay,
}

#[derive(Debug, Clone)]
pub struct PlotSpec {
    pub voices: Vec<Voice>,
    pub mode: PlotMode,
}

fn voice_color(voice: Voice) -> &'static str {
    match voice {
        Voice::Soprano => "#1f77b4",
        Voice::Alto => "#d62728",
        Voice::Tenor => "#2ca02c",
        Voice::Bass => "#9467bd",
    }
}

struct Mark {
    x: f64,
    diatonic: i16,
    ornament: bool,
    /// Timeline: global syllable index; overlay: section number.
    group: u32,
}

fn collect_marks(score: &Score, voice: Voice, mode: PlotMode) -> Vec<Mark> {
    let mut marks = Vec::new();
    let mut per_section_cursor: u32 = 0;
    let mut last_section = 0u32;
    for cell in &score.part(voice).cells {
        let bar = score.plan.bar(cell.bar).expect("cell bars exist");
        let (x, group) = match mode {
            PlotMode::Timeline => {
                let x = (score.plan.syllable_offset(cell.bar) + cell.index) as f64;
                (x, 0)
            }
            PlotMode::Overlay => {
                if bar.section != last_section {
                    last_section = bar.section;
                    per_section_cursor = 0;
                }
                let x = per_section_cursor as f64;
                per_section_cursor += 1;
                (x, bar.section)
            }
        };
        marks.push(Mark { x, diatonic: cell.main.pitch.diatonic_index(), ornament: false, group });
        if let Some(orn) = &cell.ornament {
            marks.push(Mark { x: x + 0.5, diatonic: orn.pitch.diatonic_index(), ornament: true, group });
        }
    }
    marks
}

/// Render the requested voices as a deterministic SVG document.
pub fn render_svg(score: &Score, spec: &PlotSpec) -> Result<String, String> {
    if spec.voices.is_empty() {
        return Err("no voices requested".into());
    }
    let mut all: Vec<(Voice, Vec<Mark>)> = Vec::new();
    for voice in &spec.voices {
        let marks = collect_marks(score, *voice, spec.mode);
        if marks.is_empty() {
            return Err(format!("the {} part has no notes to plot", voice.name()));
        }
        all.push((*voice, marks));
    }

    let x_max = all
        .iter()
        .flat_map(|(_, ms)| ms.iter())
        .map(|m| m.x)
        .fold(0.0f64, f64::max);
    let (dia_min, dia_max) = all
        .iter()
        .flat_map(|(_, ms)| ms.iter())
        .fold((i16::MAX, i16::MIN), |(lo, hi), m| (lo.min(m.diatonic), hi.max(m.diatonic)));

    let margin = 40.0;
    let width = 960.0;
    let height = 40.0 * 2.0 + ((dia_max - dia_min) as f64 + 1.0) * 12.0;
    let x_scale = (width - 2.0 * margin) / x_max.max(1.0);
    let y_of = |d: i16| margin + (dia_max - d) as f64 * 12.0;
    let x_of = |x: f64| margin + x * x_scale;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height:.1}\" viewBox=\"0 0 {width} {height:.1}\">"
    );
    let _ = writeln!(svg, "  <rect width=\"{width}\" height=\"{height:.1}\" fill=\"white\"/>");

    if let PlotMode::Timeline = spec.mode {
        // dashed ticks at section starts
        for bar in score.plan.bars() {
            let first_of_section = score
                .plan
                .bars()
                .iter()
                .find(|b| b.section == bar.section)
                .map(|b| b.number)
                == Some(bar.number);
            if first_of_section {
                let x = x_of(score.plan.syllable_offset(bar.number) as f64);
                let _ = writeln!(
                    svg,
                    "  <line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"#cccccc\" stroke-dasharray=\"3,3\"/>",
                    margin - 10.0,
                    height - margin + 10.0
                );
                let _ = writeln!(
                    svg,
                    "  <text x=\"{x:.1}\" y=\"{:.1}\" font-size=\"9\" fill=\"#888888\">{}</text>",
                    margin - 16.0,
                    bar.section
                );
            }
        }
    }

    for (vi, (voice, marks)) in all.iter().enumerate() {
        let color = voice_color(*voice);
        // polylines through the main notes, split where the voice is silent
        let mut segments: Vec<Vec<(f64, f64)>> = Vec::new();
        let mut current: Vec<(f64, f64)> = Vec::new();
        let mut last: Option<(f64, u32)> = None;
        for m in marks.iter().filter(|m| !m.ornament) {
            let broken = match last {
                Some((lx, lg)) => m.group != lg || m.x - lx > 1.5,
                None => false,
            };
            if broken && !current.is_empty() {
                segments.push(std::mem::take(&mut current));
            }
            current.push((x_of(m.x), y_of(m.diatonic)));
            last = Some((m.x, m.group));
        }
        if !current.is_empty() {
            segments.push(current);
        }
        for seg in &segments {
            let points: Vec<String> = seg.iter().map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
            let _ = writeln!(
                svg,
                "  <polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1\" opacity=\"0.5\"/>",
                points.join(" ")
            );
        }
        for m in marks {
            let x = x_of(m.x);
            let y = y_of(m.diatonic);
            if m.ornament {
                let _ = writeln!(
                    svg,
                    "  <path d=\"M {x:.1} {:.1} V {:.1} M {:.1} {y:.1} H {:.1}\" stroke=\"{color}\" stroke-width=\"1.4\"/>",
                    y - 3.5,
                    y + 3.5,
                    x - 3.5,
                    x + 3.5
                );
            } else {
                let _ = writeln!(svg, "  <circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"2.4\" fill=\"{color}\"/>");
            }
        }
        let _ = writeln!(
            svg,
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" fill=\"{color}\">{}</text>",
            margin + vi as f64 * 70.0,
            height - 12.0,
            voice.name()
        );
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}
