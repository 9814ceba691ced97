use std::collections::BTreeSet;

use crate::config::AnalysisConfig;
use crate::finding::{sort_findings, Finding, SmellKind};
use crate::frontend::ast::{AstNode, NodeKind};
use crate::frontend::scope::{DeclarationKind, Resolution};
use crate::frontend::SourceUnit;
use crate::game::UnitRef;

fn terminates(stmt: &AstNode) -> bool {
    matches!(stmt.kind, NodeKind::Return | NodeKind::Throw | NodeKind::Break | NodeKind::Continue)
}

fn unreachable(unit: &SourceUnit, out: &mut Vec<Finding>) {
    let Some(ast) = &unit.ast else { return };
    ast.walk(&mut |node| {
        let statements = node.statements();
        let Some(stop) = statements.iter().position(terminates) else { return };
        let dead: Vec<&AstNode> = statements[stop + 1..]
            .iter()
            .filter(|s| !matches!(s.kind, NodeKind::FunctionDecl | NodeKind::Empty))
            .collect();
        if let (Some(first), Some(last)) = (dead.first(), dead.last()) {
            let span = unit.span(first.span.start, last.span.end);
            out.push(
                Finding::smell(SmellKind::S13, &unit.path, span, unit.slice(&first.span))
                    .with_subkind("unreachable"),
            );
        }
    });
}

/// Names assigned to `on*` handler properties (`window.onload = init`).
fn handler_assignments(game: &[UnitRef<'_>]) -> BTreeSet<String> {
    let mut names = BTreeSet::new();
    for script in game {
        let Some(ast) = &script.unit.ast else { continue };
        ast.walk(&mut |node| {
            if node.kind != NodeKind::Assignment {
                return;
            }
            let [target, value] = node.children.as_slice() else { return };
            if target.member_property().is_some_and(|p| p.starts_with("on")) {
                if let Some(name) = value.ident_name() {
                    names.insert(name.to_string());
                }
            }
        });
    }
    names
}

/// S13: statements after an unconditional jump, and top-level declarations
/// never read anywhere in the game.
pub fn detect_s13(game: &[UnitRef<'_>], _cfg: &AnalysisConfig) -> Vec<Finding> {
    let mut out = Vec::new();
    for script in game {
        unreachable(script.unit, &mut out);
    }
    let entry_points = handler_assignments(game);
    for (unit_index, script) in game.iter().enumerate() {
        let Some(root) = script.scopes.scopes.first() else { continue };
        let shared = !script.scopes.is_module;
        for (decl_index, decl) in root.declarations.iter().enumerate() {
            let candidate = matches!(
                decl.kind,
                DeclarationKind::Var
                    | DeclarationKind::Let
                    | DeclarationKind::Const
                    | DeclarationKind::Function
                    | DeclarationKind::Class
            );
            if !candidate || script.scopes.exports.contains(&decl.name) || entry_points.contains(&decl.name) {
                continue;
            }
            let used = game.iter().enumerate().any(|(other_index, other)| {
                other.scopes.references().any(|r| {
                    if r.write || r.name != decl.name {
                        return false;
                    }
                    let own = other_index == unit_index;
                    let hits = match r.resolution {
                        Resolution::Declared { scope: 0, index } => own && index == decl_index,
                        Resolution::Global => shared && !other.scopes.is_module,
                        Resolution::Declared { .. } => false,
                    };
                    hits && !(own && decl.span.contains(&r.span))
                })
            });
            if !used {
                out.push(
                    Finding::smell(SmellKind::S13, &script.unit.path, decl.span, &decl.name).with_subkind("unused"),
                );
            }
        }
    }
    sort_findings(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smells::test_util::game;

    fn subkinds(files: &[(&str, &str)]) -> Vec<(String, String)> {
        let g = game(files);
        detect_s13(&g.scripts(), &AnalysisConfig::default())
            .into_iter()
            .map(|f| (f.subkind.unwrap(), f.evidence))
            .collect()
    }

    #[test]
    fn statement_after_return() {
        let found = subkinds(&[("a.js", "function f(x){ return x; x++; }\nf(1);")]);
        assert_eq!(found, [("unreachable".to_string(), "x++;".to_string())]);
    }

    #[test]
    fn hoisted_functions_after_return_are_live() {
        assert!(subkinds(&[("a.js", "function f(){ return g(); function g(){ return 1; } }\nf();")]).is_empty());
    }

    #[test]
    fn unreferenced_helper() {
        let found = subkinds(&[("a.js", "function helper(){ return helper(); }\nfunction main(){}\nmain();")]);
        assert_eq!(found, [("unused".to_string(), "helper".to_string())]);
    }

    #[test]
    fn html_event_attributes_keep_functions_alive() {
        let files = [("game.js", "function init(){}"), ("index.html", "<body onload=\"init()\"></body>")];
        assert!(subkinds(&files).is_empty());
    }

    #[test]
    fn cross_file_references_and_handlers() {
        let files = [("a.js", "var Game = {}; function boot(){}"), ("b.js", "Game.x = 1; window.onload = boot;")];
        assert!(subkinds(&files).is_empty());
    }

    #[test]
    fn exported_names_are_entry_points() {
        assert!(subkinds(&[("m.js", "export function api(){}\nexport const k = 1;")]).is_empty());
        assert_eq!(subkinds(&[("m.js", "function local(){}\nexport default 1;")]).len(), 1);
    }
}
