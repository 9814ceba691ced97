//! The 13 code-smell detectors.
//!
//! Unit-scoped detectors take one script and its scopes; S4, S11 and S13 see
//! the whole game. Every detector returns findings in canonical order.

mod bequest;
mod closure;
mod coupling;
mod dead_code;
mod functions;
mod globals;
mod objects;

use std::collections::BTreeSet;

pub use bequest::detect_s11;
pub use closure::detect_s1;
pub use coupling::detect_s2;
pub use dead_code::detect_s13;
pub use functions::{
    callback_depths, case_count, detect_s10, detect_s12, detect_s3, detect_s7, detect_s8, detect_s9, own_body_loc,
};
pub use globals::detect_s4;
pub use objects::{detect_s5, detect_s6, object_member_count};

use crate::config::AnalysisConfig;
use crate::finding::{sort_findings, Finding, Kind, SmellKind};
use crate::frontend::{ScopeModel, SourceUnit};
use crate::game::{GameUnits, UnitRef};

pub fn is_game_scoped(kind: SmellKind) -> bool {
    matches!(kind, SmellKind::S4 | SmellKind::S11 | SmellKind::S13)
}

/// Runs one unit-scoped detector. Game-scoped kinds yield nothing here.
pub fn detect_unit(kind: SmellKind, unit: &SourceUnit, scopes: &ScopeModel, cfg: &AnalysisConfig) -> Vec<Finding> {
    let detector: fn(&SourceUnit, &ScopeModel, &AnalysisConfig) -> Vec<Finding> = match kind {
        SmellKind::S1 => detect_s1,
        SmellKind::S2 => detect_s2,
        SmellKind::S3 => detect_s3,
        SmellKind::S5 => detect_s5,
        SmellKind::S6 => detect_s6,
        SmellKind::S7 => detect_s7,
        SmellKind::S8 => detect_s8,
        SmellKind::S9 => detect_s9,
        SmellKind::S10 => detect_s10,
        SmellKind::S12 => detect_s12,
        SmellKind::S4 | SmellKind::S11 | SmellKind::S13 => return Vec::new(),
    };
    detector(unit, scopes, cfg)
}

pub fn detect_game(kind: SmellKind, game: &[UnitRef<'_>], cfg: &AnalysisConfig) -> Vec<Finding> {
    match kind {
        SmellKind::S4 => detect_s4(game, cfg),
        SmellKind::S11 => detect_s11(game, cfg),
        SmellKind::S13 => detect_s13(game, cfg),
        _ => Vec::new(),
    }
}

/// All enabled smell detectors over one game.
pub fn run_smells(game: &GameUnits, enabled: &BTreeSet<Kind>, cfg: &AnalysisConfig) -> Vec<Finding> {
    let kinds: Vec<SmellKind> = SmellKind::ALL.into_iter().filter(|k| enabled.contains(&Kind::Smell(*k))).collect();
    let scripts = game.scripts();
    let mut findings = Vec::new();
    if kinds.contains(&SmellKind::S2) {
        let empty = ScopeModel::empty();
        for html in game.html_files() {
            findings.extend(detect_s2(html, &empty, cfg));
        }
    }
    for script in &scripts {
        for &kind in &kinds {
            findings.extend(detect_unit(kind, script.unit, script.scopes, cfg));
        }
    }
    for &kind in kinds.iter().filter(|k| is_game_scoped(**k)) {
        findings.extend(detect_game(kind, &scripts, cfg));
    }
    sort_findings(&mut findings);
    findings
}

#[cfg(test)]
pub(crate) mod test_util {
    use crate::config::AnalysisConfig;
    use crate::finding::Finding;
    use crate::frontend::{build_scopes, parse_source, ScopeModel, SourceKind, SourceUnit};
    use crate::game::GameUnits;

    pub fn js(src: &str) -> (SourceUnit, ScopeModel) {
        let unit = parse_source("test.js", src, SourceKind::Js);
        assert!(unit.diagnostics.is_empty(), "{:?}", unit.diagnostics);
        let scopes = build_scopes(&unit);
        (unit, scopes)
    }

    pub fn run(detector: fn(&SourceUnit, &ScopeModel, &AnalysisConfig) -> Vec<Finding>, src: &str) -> Vec<Finding> {
        let (unit, scopes) = js(src);
        detector(&unit, &scopes, &AnalysisConfig::default())
    }

    pub fn game(files: &[(&str, &str)]) -> GameUnits {
        GameUnits::new(
            files
                .iter()
                .map(|(path, text)| {
                    let kind = if path.ends_with(".js") { SourceKind::Js } else { SourceKind::Html };
                    parse_source(path, text, kind)
                })
                .collect(),
        )
    }
}
