use std::collections::BTreeMap;

use crate::config::AnalysisConfig;
use crate::finding::{sort_findings, Finding, SmellKind};
use crate::frontend::Span;
use crate::game::UnitRef;

/// Globals defined anywhere in the game, each with its first definition site
/// (by path, then position).
pub fn game_globals<'a>(game: &[UnitRef<'a>]) -> BTreeMap<String, (&'a str, Span)> {
    let mut first: BTreeMap<String, (&'a str, Span)> = BTreeMap::new();
    for script in game {
        for global in script.scopes.defined_globals() {
            let Some(site) = global.definition_sites.iter().min_by_key(|s| s.start) else { continue };
            let candidate = (script.unit.path.as_str(), *site);
            first
                .entry(global.name.clone())
                .and_modify(|cur| {
                    if (candidate.0, candidate.1.start) < (cur.0, cur.1.start) {
                        *cur = candidate;
                    }
                })
                .or_insert(candidate);
        }
    }
    first
}

/// S4: when the game defines more than `globals_max` globals, one finding per global.
pub fn detect_s4(game: &[UnitRef<'_>], cfg: &AnalysisConfig) -> Vec<Finding> {
    let globals = game_globals(game);
    if globals.len() <= cfg.globals_max as usize {
        return Vec::new();
    }
    let total = globals.len() as f64;
    let mut out: Vec<Finding> = globals
        .into_iter()
        .map(|(name, (path, span))| {
            Finding::smell(SmellKind::S4, path, span, &name).with_metric(total, cfg.globals_max as f64)
        })
        .collect();
    sort_findings(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smells::test_util::game;

    fn globals_src(n: usize) -> String {
        (0..n).map(|i| format!("var g{i} = {i};\n")).collect()
    }

    #[test]
    fn threshold_is_strict() {
        let g = game(&[("a.js", &globals_src(12))]);
        assert_eq!(detect_s4(&g.scripts(), &AnalysisConfig::default()).len(), 12);
        let g = game(&[("a.js", &globals_src(10))]);
        assert!(detect_s4(&g.scripts(), &AnalysisConfig::default()).is_empty());
    }

    #[test]
    fn iife_state_is_not_global() {
        let src = format!("(function(){{ {} }})();", globals_src(30));
        let g = game(&[("a.js", &src)]);
        assert!(detect_s4(&g.scripts(), &AnalysisConfig::default()).is_empty());
    }

    #[test]
    fn globals_are_counted_across_files_once() {
        let g = game(&[("a.js", &globals_src(6)), ("b.js", &globals_src(12)), ("index.html", "<script>var extra = 1;</script>")]);
        let found = detect_s4(&g.scripts(), &AnalysisConfig::default());
        assert_eq!(found.len(), 13);
        assert!(found.iter().filter(|f| f.evidence == "g0").all(|f| f.path == "a.js"));
    }
}
