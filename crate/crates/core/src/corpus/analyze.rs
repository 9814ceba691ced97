use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use super::{GameManifest, GameMeta};
use crate::config::AnalysisConfig;
use crate::finding::{sort_findings, Finding, Kind};
use crate::frontend::{count_loc, decode_source, parse_source, SourceKind, SourceUnit};
use crate::game::GameUnits;
use crate::patterns::run_patterns;
use crate::smells::run_smells;

/// A non-fatal problem met while loading inputs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagnostic {
    pub path: String,
    pub line: Option<u64>,
    pub message: String,
}

impl Diagnostic {
    pub fn new(path: &str, line: Option<u64>, message: impl Into<String>) -> Self {
        Diagnostic { path: path.to_string(), line, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "{}:{}: {}", self.path, line, self.message),
            None => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameReport {
    pub game_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<GameMeta>,
    pub file_count: usize,
    pub js_loc: usize,
    pub counts: BTreeMap<Kind, usize>,
    pub findings: Vec<Finding>,
    pub diagnostics: Vec<Diagnostic>,
    pub minified_files: Vec<String>,
}

impl GameReport {
    pub fn count(&self, kind: Kind) -> usize {
        self.counts.get(&kind).copied().unwrap_or(0)
    }
}

fn relative(root: &Path, path: &Path) -> String {
    let rel = path.strip_prefix(root).unwrap_or(path);
    let parts: Vec<String> = rel.components().map(|c| c.as_os_str().to_string_lossy().into_owned()).collect();
    if parts.is_empty() {
        path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
    } else {
        parts.join("/")
    }
}

/// `.js` and `.html` files under `root` in path order, skipping ignored
/// directory names. A file root yields itself.
pub fn collect_files(root: &Path, ignore_dirs: &[String]) -> (Vec<PathBuf>, Vec<Diagnostic>) {
    let mut files = Vec::new();
    let mut diagnostics = Vec::new();
    let walker = WalkDir::new(root).sort_by_file_name().into_iter().filter_entry(|e| {
        e.depth() == 0 || !e.file_type().is_dir() || !ignore_dirs.iter().any(|d| e.file_name() == d.as_str())
    });
    for entry in walker {
        match entry {
            Ok(e) if e.file_type().is_file() && SourceKind::from_path(e.path()).is_some() => {
                files.push(e.into_path());
            }
            Ok(_) => {}
            Err(err) => {
                let path = err.path().map_or_else(|| root.display().to_string(), |p| relative(root, p));
                diagnostics.push(Diagnostic::new(&path, None, err.to_string()));
            }
        }
    }
    (files, diagnostics)
}

/// Runs the enabled detectors over already parsed files.
pub fn analyze_units(game_id: &str, units: Vec<SourceUnit>, cfg: &AnalysisConfig, enabled: &BTreeSet<Kind>) -> GameReport {
    let mut diagnostics = Vec::new();
    let mut minified_files = Vec::new();
    let mut js_loc = 0;
    let file_count = units.len();
    let game = GameUnits::new(units);
    for file in &game.files {
        if file.kind == SourceKind::Js && file.is_parsed() {
            js_loc += count_loc(file.full_span(), file);
        }
        let scripts = std::iter::once(file).chain(file.embedded.iter().map(|e| &e.unit));
        for unit in scripts {
            for d in &unit.diagnostics {
                let message = format!("{}:{}: {}", d.line, d.column, d.message);
                diagnostics.push(Diagnostic::new(&unit.path, None, message));
            }
        }
        if file.minified {
            minified_files.push(file.path.clone());
        }
    }
    let mut findings = run_smells(&game, enabled, cfg);
    findings.extend(run_patterns(&game, enabled, cfg));
    sort_findings(&mut findings);
    let mut counts: BTreeMap<Kind, usize> = Kind::all().map(|k| (k, 0)).collect();
    for f in &findings {
        *counts.entry(f.kind).or_default() += 1;
    }
    GameReport { game_id: game_id.to_string(), meta: None, file_count, js_loc, counts, findings, diagnostics, minified_files }
}

/// Analyzes one game rooted at a directory (or a single file) with the
/// given detectors enabled.
pub fn analyze_path(game_id: &str, root: &Path, cfg: &AnalysisConfig, enabled: &BTreeSet<Kind>) -> GameReport {
    let (files, mut diagnostics) = collect_files(root, &cfg.ignore_dirs);
    let loaded: Vec<(Option<SourceUnit>, Vec<Diagnostic>)> = files
        .par_iter()
        .map(|path| {
            let rel = relative(root, path);
            let Some(kind) = SourceKind::from_path(path) else { return (None, Vec::new()) };
            match std::fs::read(path) {
                Ok(bytes) => {
                    let (text, note) = decode_source(&bytes);
                    let notes = note.into_iter().map(|n| Diagnostic::new(&rel, None, n)).collect();
                    (Some(parse_source(&rel, &text, kind)), notes)
                }
                Err(err) => (None, vec![Diagnostic::new(&rel, None, format!("unreadable: {err}"))]),
            }
        })
        .collect();
    let mut units = Vec::new();
    for (unit, notes) in loaded {
        units.extend(unit);
        diagnostics.extend(notes);
    }
    let mut report = analyze_units(game_id, units, cfg, enabled);
    diagnostics.append(&mut report.diagnostics);
    diagnostics.sort();
    report.diagnostics = diagnostics;
    report
}

/// Analyzes one game directory with every detector enabled; the game id is
/// the directory name.
pub fn analyze_game(root: &Path, cfg: &AnalysisConfig) -> GameReport {
    let id = root.file_name().map_or_else(|| root.display().to_string(), |n| n.to_string_lossy().into_owned());
    analyze_path(&id, root, cfg, &Kind::all().collect())
}

/// Analyzes every manifest entry in parallel; reports come back sorted by game id.
pub fn analyze_corpus(manifest: &GameManifest, cfg: &AnalysisConfig, enabled: &BTreeSet<Kind>) -> Vec<GameReport> {
    let mut reports: Vec<GameReport> = manifest
        .entries
        .par_iter()
        .map(|entry| {
            let mut report = analyze_path(&entry.game_id, &entry.root, cfg, enabled);
            report.meta = entry.meta.clone();
            report
        })
        .collect();
    reports.sort_by(|a, b| a.game_id.cmp(&b.game_id));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, files: &[(&str, &str)]) {
        for (path, text) in files {
            let path = dir.join(path);
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(path, text).unwrap();
        }
    }

    #[test]
    fn single_smell_game() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), &[("main.js", "try{f()}catch(e){}")]);
        let report = analyze_game(dir.path(), &AnalysisConfig::default());
        assert_eq!(report.file_count, 1);
        assert_eq!(report.js_loc, 1);
        for kind in Kind::all() {
            let expected = usize::from(kind.code() == "S3");
            assert_eq!(report.count(kind), expected, "{kind}");
        }
    }

    #[test]
    fn empty_directory() {
        let dir = tempfile::tempdir().unwrap();
        let report = analyze_game(dir.path(), &AnalysisConfig::default());
        assert_eq!(report.file_count, 0);
        assert!(report.counts.values().all(|&c| c == 0));
        assert_eq!(report.counts.len(), 17);
    }

    #[test]
    fn ignored_directories_and_other_files() {
        let dir = tempfile::tempdir().unwrap();
        write(
            dir.path(),
            &[
                ("src/a.js", "var a = 1;\n"),
                ("node_modules/lib/x.js", "try{}catch(e){}"),
                ("build/out.js", "try{}catch(e){}"),
                ("notes.txt", "try{}catch(e){}"),
                ("index.html", "<script>go();</script>"),
            ],
        );
        let (files, _) = collect_files(dir.path(), &AnalysisConfig::default().ignore_dirs);
        let names: Vec<String> = files.iter().map(|p| relative(dir.path(), p)).collect();
        assert_eq!(names, ["index.html", "src/a.js"]);
    }

    #[test]
    fn bad_files_become_diagnostics() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), &[("a.js", "function (")]);
        std::fs::write(dir.path().join("b.js"), b"var s = '\xff';").unwrap();
        let report = analyze_game(dir.path(), &AnalysisConfig::default());
        assert_eq!(report.file_count, 2);
        assert_eq!(report.diagnostics.len(), 2);
        assert!(report.diagnostics.iter().any(|d| d.path == "a.js" && d.message.starts_with("1:")));
        assert!(report.diagnostics.iter().any(|d| d.path == "b.js"));
    }

    #[test]
    fn single_file_root() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), &[("one.js", "function f(a,b,c,d,e){}")]);
        let report = analyze_path("one", &dir.path().join("one.js"), &AnalysisConfig::default(), &Kind::all().collect());
        assert_eq!(report.findings[0].path, "one.js");
        assert_eq!(report.count("S9".parse().unwrap()), 1);
    }
}
