//! Library side of the `gamesmell` command: option handling, the run loop,
//! report rendering, and refactoring advice.

pub mod advice;
pub mod report;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use gamesmell_core::config::ConfigError;
use gamesmell_core::corpus::{analyze_corpus, analyze_path, load_manifest, render_stats_csv, ManifestError};
use gamesmell_core::{AnalysisConfig, Kind};

pub use advice::{advice_for, advise, Advice};
pub use report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// One source file analyzed as its own game.
    File,
    /// One game directory.
    Game,
    /// A manifest listing game directories.
    Corpus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub mode: Mode,
    pub inputs: Vec<PathBuf>,
    pub format: Format,
    pub config_path: Option<PathBuf>,
    pub enabled_kinds: BTreeSet<Kind>,
    pub fail_on: BTreeSet<Kind>,
    pub ignore_dirs: Vec<String>,
    pub stats_csv: Option<PathBuf>,
}

impl RunOptions {
    pub fn new(mode: Mode, inputs: Vec<PathBuf>) -> Self {
        RunOptions {
            mode,
            inputs,
            format: Format::Text,
            config_path: None,
            enabled_kinds: Kind::all().collect(),
            fail_on: BTreeSet::new(),
            ignore_dirs: Vec::new(),
            stats_csv: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("no input paths given")]
    NoInputs,
    #[error("input not found: {0}")]
    MissingInput(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Manifest(#[from] ManifestError),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

/// What a run produced: the exit code, the rendered report for standard
/// output, and diagnostics for standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn game_id(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn load_config(options: &RunOptions) -> Result<AnalysisConfig, RunError> {
    let mut cfg = match &options.config_path {
        Some(path) => AnalysisConfig::load(path)?,
        None => AnalysisConfig::default(),
    };
    for dir in &options.ignore_dirs {
        if !cfg.ignore_dirs.contains(dir) {
            cfg.ignore_dirs.push(dir.clone());
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Builds the report for the given options.
pub fn build_report(options: &RunOptions) -> Result<(Report, Vec<String>), RunError> {
    if options.inputs.is_empty() {
        return Err(RunError::NoInputs);
    }
    let cfg = load_config(options)?;
    let mut notes = Vec::new();
    let games = match options.mode {
        Mode::Corpus => {
            let mut games = Vec::new();
            for manifest_path in &options.inputs {
                let manifest = load_manifest(manifest_path)?;
                notes.extend(manifest.diagnostics.iter().map(|d| d.to_string()));
                games.extend(analyze_corpus(&manifest, &cfg, &options.enabled_kinds));
            }
            games
        }
        Mode::File | Mode::Game => {
            let mut games = Vec::new();
            for input in &options.inputs {
                if !input.exists() {
                    return Err(RunError::MissingInput(input.display().to_string()));
                }
                games.push(analyze_path(&game_id(input), input, &cfg, &options.enabled_kinds));
            }
            games
        }
    };
    for game in &games {
        notes.extend(game.diagnostics.iter().map(|d| format!("{}: {d}", game.game_id)));
    }
    Ok((Report::new(cfg, games), notes))
}

/// Runs the analysis. Exit code 0 when no finding matches `fail_on`, 1 when
/// some do, 2 on usage or configuration errors.
pub fn run(options: &RunOptions) -> RunOutcome {
    let (report, notes) = match build_report(options) {
        Ok(out) => out,
        Err(err) => return RunOutcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {err}\n") },
    };
    let mut stderr: String = notes.iter().map(|n| format!("warning: {n}\n")).collect();
    if let Some(path) = &options.stats_csv {
        if let Err(source) = std::fs::write(path, render_stats_csv(&report.stats)) {
            let err = RunError::Write { path: path.display().to_string(), source };
            stderr.push_str(&format!("error: {err}\n"));
            return RunOutcome { code: EXIT_USAGE, stdout: String::new(), stderr };
        }
    }
    let stdout = match options.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    let code = if report.count_of(&options.fail_on) > 0 { EXIT_FINDINGS } else { EXIT_OK };
    RunOutcome { code, stdout, stderr }
}
