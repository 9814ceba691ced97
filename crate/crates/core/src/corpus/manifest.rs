use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::Diagnostic;

#[derive(Debug, thiserror::Error)]
pub enum ManifestError {
    #[error("cannot read manifest {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("manifest {path} has no header row with game_id and root columns")]
    Header { path: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameMeta {
    pub stars: Option<u64>,
    pub issues: Option<u64>,
    pub category: Option<String>,
    pub url: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub game_id: String,
    pub root: PathBuf,
    pub meta: Option<GameMeta>,
}

#[derive(Debug, Clone, Default)]
pub struct GameManifest {
    pub entries: Vec<ManifestEntry>,
    pub diagnostics: Vec<Diagnostic>,
}

fn count(field: Option<&str>, name: &str) -> Result<Option<u64>, String> {
    match field.map(str::trim).filter(|s| !s.is_empty()) {
        None => Ok(None),
        Some(text) => text.parse().map(Some).map_err(|_| format!("{name} is not a non-negative integer: '{text}'")),
    }
}

fn text(field: Option<&str>) -> Option<String> {
    field.map(str::trim).filter(|s| !s.is_empty()).map(str::to_string)
}

/// Reads a CSV manifest with header `game_id,root[,stars,issues,category,url]`.
/// Relative roots resolve against the manifest's directory. Bad rows, duplicate
/// ids, and missing roots are skipped with a diagnostic.
pub fn load_manifest(path: &Path) -> Result<GameManifest, ManifestError> {
    let display = path.display().to_string();
    let data = std::fs::read(path).map_err(|source| ManifestError::Io { path: display.clone(), source })?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut reader = csv::ReaderBuilder::new().flexible(true).trim(csv::Trim::All).comment(Some(b'#')).from_reader(&data[..]);
    let mut manifest = GameManifest::default();
    if data.iter().all(u8::is_ascii_whitespace) {
        return Ok(manifest);
    }
    let Ok(headers) = reader.headers().cloned() else {
        return Err(ManifestError::Header { path: display });
    };
    let column = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let (Some(id_col), Some(root_col)) = (column("game_id"), column("root")) else {
        return Err(ManifestError::Header { path: display });
    };
    let [stars_col, issues_col, category_col, url_col] = ["stars", "issues", "category", "url"].map(column);

    let mut seen = BTreeSet::new();
    for (row, record) in reader.records().enumerate() {
        let line = record.as_ref().ok().and_then(|r| r.position()).map_or(row as u64 + 2, |p| p.line());
        let mut skip = |message: String| manifest.diagnostics.push(Diagnostic::new(&display, Some(line), message));
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                skip(format!("unreadable row: {e}"));
                continue;
            }
        };
        let field = |col: Option<usize>| col.and_then(|c| record.get(c));
        let (Some(game_id), Some(root)) = (text(field(Some(id_col))), text(field(Some(root_col)))) else {
            skip("row lacks game_id or root".to_string());
            continue;
        };
        let (stars, issues) = match (count(field(stars_col), "stars"), count(field(issues_col), "issues")) {
            (Ok(s), Ok(i)) => (s, i),
            (Err(e), _) | (_, Err(e)) => {
                skip(e);
                continue;
            }
        };
        if !seen.insert(game_id.clone()) {
            skip(format!("duplicate game_id '{game_id}'"));
            continue;
        }
        let root = base.join(root);
        if !root.is_dir() {
            skip(format!("root of '{game_id}' is not a directory: {}", root.display()));
            continue;
        }
        let (category, url) = (text(field(category_col)), text(field(url_col)));
        let meta = (stars.is_some() || issues.is_some() || category.is_some() || url.is_some())
            .then_some(GameMeta { stars, issues, category, url });
        manifest.entries.push(ManifestEntry { game_id, root, meta });
    }
    Ok(manifest)
}
