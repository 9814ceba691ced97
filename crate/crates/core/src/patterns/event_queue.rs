use regex::Regex;

use super::SiteIndex;
use crate::config::AnalysisConfig;
use crate::finding::{sort_findings, Finding, PatternKind};
use crate::frontend::ast::{AstNode, NodeKind};
use crate::game::UnitRef;

const SOURCE_CALLS: [&str; 2] = ["getItem", "addEventListener"];

/// Event fields distinctive enough to identify an event object on any parameter.
const EVENT_FIELDS: [&str; 7] = ["keyCode", "clientX", "clientY", "pageX", "pageY", "touches", "changedTouches"];

/// Fields that only mark an event when the parameter is named like one.
const AMBIGUOUS_FIELDS: [&str; 3] = ["which", "key", "button"];

fn event_like_name(name: &str) -> bool {
    let lower = name.to_ascii_lowercase();
    matches!(lower.as_str(), "e" | "ev" | "evt" | "event") || lower.ends_with("event") || lower.ends_with("evt")
}

/// First node in the function's own code that reads an input or storage
/// event source.
fn event_source(func: &AstNode) -> Option<&AstNode> {
    let params: Vec<&str> = func.params().iter().filter_map(AstNode::ident_name).collect();
    let mut found = None;
    func.walk_own(&mut |node| {
        if found.is_some() {
            return;
        }
        let hit = match node.kind {
            NodeKind::Call => node.callee().is_some_and(|c| {
                let name = c.member_property().or_else(|| c.ident_name());
                name.is_some_and(|n| SOURCE_CALLS.contains(&n))
            }),
            NodeKind::Assignment => node.children[0].member_property().is_some_and(|p| p.len() > 2 && p.starts_with("on")),
            NodeKind::Member => {
                let param = node.member_object().and_then(AstNode::ident_name).filter(|n| params.contains(n));
                match (param, node.member_property()) {
                    (Some(param), Some(field)) => {
                        EVENT_FIELDS.contains(&field) || (AMBIGUOUS_FIELDS.contains(&field) && event_like_name(param))
                    }
                    _ => false,
                }
            }
            _ => false,
        };
        if hit {
            found = Some(node);
        }
    });
    found
}

fn mentions_queue(root: &AstNode, queue: &Regex) -> bool {
    let mut hit = false;
    root.walk(&mut |node| {
        if hit {
            return;
        }
        let names = [
            node.ident_name(),
            node.member_property(),
            node.function_info().and_then(|f| f.name.as_deref()),
            node.class_name(),
            node.property_info().and_then(|p| p.key.as_deref()),
            node.method_info().and_then(|m| m.key.as_deref()),
        ];
        hit = names.into_iter().flatten().any(|n| queue.is_match(n));
    });
    hit
}

/// P2: functions consuming input or storage events directly instead of
/// going through a central queue.
pub fn detect_p2(game: &[UnitRef<'_>], cfg: &AnalysisConfig) -> Vec<Finding> {
    let queue = cfg.queue_regex();
    let mut out = Vec::new();
    for script in game {
        let unit = script.unit;
        let Some(ast) = &unit.ast else { continue };
        let index = SiteIndex::new(ast);
        for (i, site) in index.sites.iter().enumerate() {
            let Some(source) = event_source(site.node) else { continue };
            let outermost = index.chain(i).last().unwrap_or(i);
            if mentions_queue(index.sites[outermost].node, &queue) {
                continue;
            }
            let mut returned = 0;
            let mut cur = i;
            while index.sites[cur].is_returned {
                let Some(parent) = index.sites[cur].parent else { break };
                returned += 1;
                cur = parent;
            }
            let subkind = if returned >= 2 { "async-chain" } else { "unqueued-event" };
            let evidence = format!("{}: {}", index.label(i), unit.slice(&source.span));
            out.push(Finding::pattern(PatternKind::P2, &unit.path, site.node.span, &evidence).with_subkind(subkind));
        }
    }
    sort_findings(&mut out);
    out
}
