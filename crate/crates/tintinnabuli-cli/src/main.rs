//! Command-line front end: generate the reconstruction, evaluate it against
//! a reference, run ad-hoc processes, and draw piano-roll plots.

mod plot;

use clap::{Parser, Subcommand, ValueEnum};
use plot::{PlotMode, PlotSpec};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tintinnabuli::plan::Voice;
use tintinnabuli::process::Seed;
use tintinnabuli::score::Score;
use tintinnabuli::summa::{self, SummaConfig};
use tintinnabuli::{evaluate, json, musicxml, RotationDirection};

#[derive(Parser)]
#[command(name = "tintinnabuli", version, about = "Tintinnabuli score generation and evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Musicxml,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rotation {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the reconstructed score and print a one-line summary.
    Generate {
        /// JSON configuration file; missing keys take their defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Where to write the score.
        #[arg(long, short)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "musicxml")]
        format: Format,
        /// Remove ornaments on the last syllable before a voice falls silent.
        #[arg(long)]
        strip_ornamented_exits: bool,
        #[arg(long, value_enum)]
        rotation_direction: Option<Rotation>,
        #[arg(long)]
        bass_transposition: Option<i64>,
        #[arg(long)]
        drop_last_pattern_note: bool,
    },
    /// Compare a reconstruction against a reference score.
    ///
    /// Exit codes: 0 the scores match, 1 differences found, 2 a file could
    /// not be read, 3 the scores could not be aligned.
    Evaluate {
        reconstruction: PathBuf,
        reference: PathBuf,
        /// Where to write the JSON report.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Exclude the freely composed final two bars from the totals.
        #[arg(long)]
        without_ending: bool,
    },
    /// Run a tintinnabuli process over a melody and print the result.
    Process {
        /// Process definition (JSON).
        #[arg(long)]
        process: PathBuf,
        /// Melody definition (JSON).
        #[arg(long)]
        melody: PathBuf,
        /// First output entry: a pitch name, or "silent".
        #[arg(long)]
        seed: Option<String>,
    },
    /// Draw a piano-roll SVG of one or more voices.
    Plot {
        score: PathBuf,
        /// Comma-separated voice names.
        #[arg(long, value_delimiter = ',', default_value = "alto")]
        voices: Vec<String>,
        #[arg(long, value_enum, default_value = "timeline")]
        mode: PlotMode,
        #[arg(long, short)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Generate {
            config,
            output,
            format,
            strip_ornamented_exits,
            rotation_direction,
            bass_transposition,
            drop_last_pattern_note,
        } => cmd_generate(
            config,
            output,
            format,
            strip_ornamented_exits,
            rotation_direction,
            bass_transposition,
            drop_last_pattern_note,
        ),
        Command::Evaluate { reconstruction, reference, report, without_ending } => {
            cmd_evaluate(&reconstruction, &reference, report, without_ending)
        }
        Command::Process { process, melody, seed } => cmd_process(&process, &melody, seed),
        Command::Plot { score, voices, mode, output } => cmd_plot(&score, &voices, mode, &output),
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn cmd_generate(
    config: Option<PathBuf>,
    output: PathBuf,
    format: Format,
    strip: bool,
    rotation: Option<Rotation>,
    bass_transposition: Option<i64>,
    drop_last: bool,
) -> ExitCode {
    let mut cfg = match config {
        Some(path) => match std::fs::read_to_string(&path) {
            Ok(text) => match SummaConfig::from_json(&text) {
                Ok(cfg) => cfg,
                Err(e) => return fail(1, e),
            },
            Err(e) => return fail(2, format!("{}: {e}", path.display())),
        },
        None => SummaConfig::default(),
    };
    if strip {
        cfg.strip_ornamented_exits = true;
    }
    if drop_last {
        cfg.drop_last_pattern_note = true;
    }
    if let Some(r) = rotation {
        cfg.rotation_direction = match r {
            Rotation::Left => RotationDirection::Left,
            Rotation::Right => RotationDirection::Right,
        };
    }
    if let Some(t) = bass_transposition {
        cfg.bass_transposition = t;
    }

    let score = match summa::assemble(&cfg) {
        Ok(s) => s,
        Err(e) => return fail(1, e),
    };
    let document = match format {
        Format::Json => json::export_json(&score),
        Format::Musicxml => match musicxml::export_musicxml(&score) {
            Ok(x) => x,
            Err(e) => return fail(1, e),
        },
    };
    if let Err(e) = std::fs::write(&output, document) {
        return fail(2, format!("{}: {e}", output.display()));
    }
    println!("{}", summa::summarize(&score, &cfg));
    ExitCode::SUCCESS
}

/// Load a score by extension: .json for the canonical JSON format, anything
/// else is parsed as MusicXML.
fn load_score(path: &Path) -> Result<(Score, Vec<String>), (u8, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| (2u8, format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_json {
        let score = json::import_json(&text).map_err(|e| (2u8, e.to_string()))?;
        Ok((score, Vec::new()))
    } else {
        let imported = musicxml::import_musicxml(&text).map_err(|e| (2u8, e.to_string()))?;
        Ok((imported.score, imported.anomalies))
    }
}

fn cmd_evaluate(
    reconstruction: &Path,
    reference: &Path,
    report_path: Option<PathBuf>,
    without_ending: bool,
) -> ExitCode {
    let (recon, mut anomalies) = match load_score(reconstruction) {
        Ok(x) => x,
        Err((code, msg)) => return fail(code, msg),
    };
    let (reference, ref_anomalies) = match load_score(reference) {
        Ok(x) => x,
        Err((code, msg)) => return fail(code, msg),
    };
    anomalies.extend(ref_anomalies);
    for a in &anomalies {
        eprintln!("note: {a}");
    }

    let report = match evaluate::evaluate(&recon, &reference) {
        Ok(r) => r,
        Err(e @ tintinnabuli::Error::Alignment(_)) => return fail(3, e),
        Err(e) => return fail(1, e),
    };
    let report = if without_ending { report.without_ending(&recon) } else { report };
    print!("{report}");
    if let Some(path) = report_path {
        if let Err(e) = std::fs::write(&path, report.to_json()) {
            return fail(2, format!("{}: {e}", path.display()));
        }
    }
    if report.notes_to_correct > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_process(process: &Path, melody: &Path, seed: Option<String>) -> ExitCode {
    let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()));
    let proc_text = match read(process) {
        Ok(t) => t,
        Err(e) => return fail(2, e),
    };
    let melody_text = match read(melody) {
        Ok(t) => t,
        Err(e) => return fail(2, e),
    };
    let proc = match json::parse_process(&proc_text) {
        Ok(p) => p,
        Err(e) => return fail(1, e),
    };
    let melody = match json::parse_melody(&melody_text) {
        Ok(m) => m,
        Err(e) => return fail(1, e),
    };
    let seed = match seed.as_deref() {
        None => None,
        Some("silent") => Some(Seed::Silent),
        Some(name) => match name.parse() {
            Ok(p) => Some(Seed::Note(p)),
            Err(e) => return fail(1, e),
        },
    };
    let output = match proc.run(&melody, seed) {
        Ok(o) => o,
        Err(e) => return fail(1, e),
    };
    let entries: Vec<Option<String>> = match output {
        tintinnabuli::process::ProcessOutput::Melody(m) => {
            m.notes().iter().map(|n| Some(n.to_string())).collect()
        }
        tintinnabuli::process::ProcessOutput::Ornaments(t) => {
            t.entries().iter().map(|e| e.map(|p| p.to_string())).collect()
        }
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&serde_json::json!({ "output": entries }))
            .expect("serializable")
    );
    ExitCode::SUCCESS
}

fn cmd_plot(score_path: &Path, voice_names: &[String], mode: PlotMode, output: &Path) -> ExitCode {
    let (score, anomalies) = match load_score(score_path) {
        Ok(x) => x,
        Err((code, msg)) => return fail(code, msg),
    };
    for a in &anomalies {
        eprintln!("note: {a}");
    }
    let mut voices = Vec::new();
    for name in voice_names {
        match Voice::parse(name) {
            Ok(v) => voices.push(v),
            Err(e) => return fail(1, e),
        }
    }
    let spec = PlotSpec { voices, mode };
    let svg = match plot::render_svg(&score, &spec) {
        Ok(s) => s,
        Err(e) => return fail(1, e),
    };
    if let Err(e) = std::fs::write(output, svg) {
        return fail(2, format!("{}: {e}", output.display()));
    }
    ExitCode::SUCCESS
}
