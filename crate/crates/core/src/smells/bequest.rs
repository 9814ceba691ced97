use std::collections::BTreeMap;

use crate::config::AnalysisConfig;
use crate::finding::{sort_findings, Finding, SmellKind};
use crate::frontend::scope::{resolve_inheritance, TypeShape};
use crate::game::UnitRef;

/// S11: inheritors using or overriding less than `bequest_ratio` of at least
/// three inherited members. Inheritance is resolved across the whole game.
pub fn detect_s11(game: &[UnitRef<'_>], cfg: &AnalysisConfig) -> Vec<Finding> {
    let mut shapes: Vec<&TypeShape> = Vec::new();
    let mut home: BTreeMap<&str, &str> = BTreeMap::new();
    for script in game {
        for shape in &script.scopes.shapes {
            shapes.push(shape);
            if shape.parent.is_some() {
                home.entry(shape.name.as_str()).or_insert(script.unit.path.as_str());
            }
        }
    }
    let mut out = Vec::new();
    for edge in resolve_inheritance(&shapes) {
        let inherited = edge.inherited.len();
        if inherited < 3 {
            continue;
        }
        let engaged = edge.overridden.union(&edge.used).count();
        let ratio = engaged as f64 / inherited as f64;
        if ratio < cfg.bequest_ratio {
            let path = home.get(edge.child.as_str()).copied().unwrap_or_default();
            let evidence = format!("{} inherits {} of {}", edge.child, inherited, edge.parent);
            out.push(Finding::smell(SmellKind::S11, path, edge.span, &evidence).with_metric(ratio, cfg.bequest_ratio));
        }
    }
    sort_findings(&mut out);
    out
}
