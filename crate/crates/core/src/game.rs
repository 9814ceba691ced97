//! A game's parsed files plus per-script scope models.

use rayon::prelude::*;

use crate::frontend::{build_scopes, ScopeModel, SourceKind, SourceUnit};

/// One analyzable script (a JS file or an inline HTML fragment) and its scopes.
#[derive(Debug, Clone, Copy)]
pub struct UnitRef<'a> {
    pub unit: &'a SourceUnit,
    pub scopes: &'a ScopeModel,
}

#[derive(Debug, Clone)]
struct ScriptEntry {
    file: usize,
    embedded: Option<usize>,
    scopes: ScopeModel,
}

/// Files of one game, sorted by path, with a scope model for every parsed script.
#[derive(Debug, Clone)]
pub struct GameUnits {
    pub files: Vec<SourceUnit>,
    scripts: Vec<ScriptEntry>,
}

impl GameUnits {
    pub fn new(mut files: Vec<SourceUnit>) -> Self {
        files.sort_by(|a, b| a.path.cmp(&b.path));
        let locations: Vec<(usize, Option<usize>)> = files
            .iter()
            .enumerate()
            .flat_map(|(i, f)| match f.kind {
                SourceKind::Js => vec![(i, None)],
                SourceKind::Html => (0..f.embedded.len()).map(|e| (i, Some(e))).collect(),
            })
            .collect();
        let scripts = locations
            .into_par_iter()
            .map(|(file, embedded)| {
                let unit = match embedded {
                    None => &files[file],
                    Some(e) => &files[file].embedded[e].unit,
                };
                ScriptEntry { file, embedded, scopes: build_scopes(unit) }
            })
            .collect();
        GameUnits { files, scripts }
    }

    /// All scripts (parsed or not) in path order, inline fragments in document order.
    pub fn scripts(&self) -> Vec<UnitRef<'_>> {
        self.scripts
            .iter()
            .map(|s| UnitRef {
                unit: match s.embedded {
                    None => &self.files[s.file],
                    Some(e) => &self.files[s.file].embedded[e].unit,
                },
                scopes: &s.scopes,
            })
            .collect()
    }

    pub fn html_files(&self) -> impl Iterator<Item = &SourceUnit> {
        self.files.iter().filter(|f| f.kind == SourceKind::Html)
    }
}
