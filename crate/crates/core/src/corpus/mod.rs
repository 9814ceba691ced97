//! Corpus runs: manifests, per-game analysis, and corpus-wide statistics.

mod analyze;
mod manifest;
mod stats;

pub use analyze::{analyze_corpus, analyze_game, analyze_path, analyze_units, collect_files, Diagnostic, GameReport};
pub use manifest::{load_manifest, GameManifest, GameMeta, ManifestEntry, ManifestError};
pub use stats::{aggregate_stats, render_matrix_csv, render_stats_csv, format_ratio, CorpusStats, StatsAccumulator};
