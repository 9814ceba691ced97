use std::collections::BTreeSet;

use super::{classify_component, SiteIndex};
use crate::config::{AnalysisConfig, ComponentLexicon};
use crate::finding::{sort_findings, Finding, PatternKind};
use crate::frontend::ast::{AstNode, NodeKind, PropKind, Span};
use crate::frontend::count_loc;
use crate::frontend::visit::{binding_name, walk_with_ancestors};
use crate::game::UnitRef;
use crate::smells::own_body_loc;

/// Component categories touched by the code of `owner` itself, with the
/// span of each matching chain. Nested functions are not entered.
fn touched<'l>(owner: &AstNode, lexicon: &'l ComponentLexicon) -> Vec<(&'l str, Span)> {
    fn visit<'l>(node: &AstNode, continued: bool, lexicon: &'l ComponentLexicon, hits: &mut Vec<(&'l str, Span)>) {
        if !continued {
            if let Some(category) = classify_component(node, lexicon) {
                hits.push((category, node.span));
            }
        }
        let links = matches!(node.kind, NodeKind::Member | NodeKind::Call);
        for (i, child) in node.children.iter().enumerate() {
            if !child.is_function() {
                visit(child, links && i == 0, lexicon, hits);
            }
        }
    }
    let mut hits = Vec::new();
    for child in owner.children.iter().filter(|c| !c.is_function()) {
        visit(child, false, lexicon, &mut hits);
    }
    hits
}

fn method_count(node: &AstNode) -> usize {
    match node.kind {
        NodeKind::ObjectLiteral => node
            .children
            .iter()
            .filter(|p| {
                p.property_info().is_some_and(|i| matches!(i.kind, PropKind::Method | PropKind::Get | PropKind::Set))
                    || p.member_value().is_some_and(AstNode::is_function)
            })
            .count(),
        _ => node.class_members().filter(|m| m.kind == NodeKind::MethodDef).count(),
    }
}

fn multi_component(evidence: &str, categories: &BTreeSet<&str>) -> String {
    let list: Vec<&str> = categories.iter().copied().collect();
    format!("{evidence} touches {}", list.join(", "))
}

/// P1: functions touching several engine components, monolithic objects and
/// classes, and methods already reported as too long.
pub fn detect_p1(game: &[UnitRef<'_>], cfg: &AnalysisConfig) -> Vec<Finding> {
    let lexicon = &cfg.component_lexicon;
    let min = cfg.component_min_categories as usize;
    let mut out = Vec::new();
    for script in game {
        let unit = script.unit;
        let Some(ast) = &unit.ast else { continue };
        let index = SiteIndex::new(ast);

        let top = touched(ast, lexicon);
        let categories: BTreeSet<&str> = top.iter().map(|(c, _)| *c).collect();
        if categories.len() >= min {
            let start = top.iter().map(|(_, s)| s.start).min().unwrap_or(0);
            let end = top.iter().map(|(_, s)| s.end).max().unwrap_or(0);
            out.push(
                Finding::pattern(PatternKind::P1, &unit.path, unit.span(start, end), &multi_component("<top-level>", &categories))
                    .with_metric(categories.len() as f64, min as f64)
                    .with_subkind("multi-component"),
            );
        }

        for (i, site) in index.sites.iter().enumerate() {
            let categories: BTreeSet<&str> = touched(site.node, lexicon).into_iter().map(|(c, _)| c).collect();
            if categories.len() >= min {
                out.push(
                    Finding::pattern(PatternKind::P1, &unit.path, site.node.span, &multi_component(index.label(i), &categories))
                        .with_metric(categories.len() as f64, min as f64)
                        .with_subkind("multi-component"),
                );
                continue;
            }
            let loc = own_body_loc(unit, site.node);
            if loc > cfg.method_loc_max as usize {
                out.push(
                    Finding::pattern(PatternKind::P1, &unit.path, site.node.span, &format!("{} (see S8)", index.label(i)))
                        .with_metric(loc as f64, cfg.method_loc_max as f64)
                        .with_subkind("large-method"),
                );
            }
        }

        walk_with_ancestors(ast, &mut |node, ancestors| {
            if !(node.kind == NodeKind::ObjectLiteral || node.is_class()) {
                return;
            }
            let methods = method_count(node);
            let loc = count_loc(node.span, unit);
            let metric = if methods >= cfg.monolithic_methods as usize {
                (methods, cfg.monolithic_methods)
            } else if loc > cfg.monolithic_loc as usize {
                (loc, cfg.monolithic_loc)
            } else {
                return;
            };
            let name = binding_name(node, ancestors).unwrap_or_else(|| "<anonymous>".to_string());
            out.push(
                Finding::pattern(PatternKind::P1, &unit.path, node.span, &name)
                    .with_metric(metric.0 as f64, metric.1 as f64)
                    .with_subkind("monolithic"),
            );
        });
    }
    sort_findings(&mut out);
    out
}
