//! Report assembly and rendering (JSON, CSV, text).

use std::collections::BTreeSet;
use std::fmt::Write as _;

use gamesmell_core::corpus::{CorpusStats, GameReport};
use gamesmell_core::{AnalysisConfig, Kind};
use serde::{Deserialize, Serialize};

use crate::advice::advice_for;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config_echo: AnalysisConfig,
    pub games: Vec<GameReport>,
    pub stats: CorpusStats,
}

impl Report {
    pub fn new(config: AnalysisConfig, mut games: Vec<GameReport>) -> Self {
        games.sort_by(|a, b| a.game_id.cmp(&b.game_id));
        let stats = gamesmell_core::corpus::aggregate_stats(&games);
        Report { version: SCHEMA_VERSION.to_string(), config_echo: config, games, stats }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// Findings of the given kinds across all games.
    pub fn count_of(&self, kinds: &BTreeSet<Kind>) -> usize {
        self.games.iter().flat_map(|g| &g.findings).filter(|f| kinds.contains(&f.kind)).count()
    }

    /// One row per finding.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record([
                "game_id", "path", "kind", "subkind", "start_line", "start_col", "end_line", "end_col", "metric",
                "threshold", "evidence",
            ])
            .expect("in-memory write");
        let number = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for game in &self.games {
            for f in &game.findings {
                writer
                    .write_record([
                        game.game_id.clone(),
                        f.path.clone(),
                        f.kind.code().to_string(),
                        f.subkind.clone().unwrap_or_default(),
                        f.span.start_line.to_string(),
                        f.span.start_col.to_string(),
                        f.span.end_line.to_string(),
                        f.span.end_col.to_string(),
                        number(f.metric),
                        number(f.threshold),
                        f.evidence.clone(),
                    ])
                    .expect("in-memory write");
            }
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for game in &self.games {
            let _ = writeln!(out, "== {} ({} files, {} JS LOC)", game.game_id, game.file_count, game.js_loc);
            for f in &game.findings {
                let sub = f.subkind.as_deref().map(|s| format!(" [{s}]")).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{}:{}:{}: {} {}{}: {}",
                    f.path,
                    f.span.start_line,
                    f.span.start_col,
                    f.kind.code(),
                    f.kind.name(),
                    sub,
                    f.evidence
                );
            }
            for path in &game.minified_files {
                let _ = writeln!(out, "note: {path} looks minified");
            }
            let present: BTreeSet<Kind> = game.findings.iter().map(|f| f.kind).collect();
            if present.is_empty() {
                let _ = writeln!(out, "no findings");
            } else {
                let summary: Vec<String> = present.iter().map(|k| format!("{}={}", k.code(), game.count(*k))).collect();
                let _ = writeln!(out, "counts: {}", summary.join(" "));
                let _ = writeln!(out, "advice:");
                for kind in present {
                    let advice = advice_for(kind);
                    let _ = writeln!(out, "  {} {}: {}", kind.code(), advice.title, advice.body);
                }
            }
            out.push('\n');
        }
        if self.games.len() > 1 {
            let _ = writeln!(out, "== corpus ({} games)", self.stats.n_games);
            out.push_str(&gamesmell_core::corpus::render_stats_csv(&self.stats));
        }
        out
    }
}
