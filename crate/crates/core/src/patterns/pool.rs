use std::collections::{HashMap, HashSet};

use super::{Context, SiteIndex};
use crate::config::AnalysisConfig;
use crate::finding::{sort_findings, Finding, PatternKind};
use crate::frontend::ast::{AstNode, NodeKind};
use crate::frontend::visit::{short_name, walk_with_ancestors};
use crate::game::UnitRef;

fn is_allocation(node: &AstNode) -> bool {
    matches!(node.kind, NodeKind::ObjectLiteral | NodeKind::ArrayLiteral | NodeKind::New)
}

const CONTAINERS: [&str; 4] = ["Array", "Map", "Set", "Object"];

fn is_container(node: &AstNode) -> bool {
    match node.kind {
        NodeKind::ObjectLiteral | NodeKind::ArrayLiteral => true,
        NodeKind::New => node.callee().and_then(AstNode::ident_name).is_some_and(|n| CONTAINERS.contains(&n)),
        _ => false,
    }
}

/// Name of a local grown by this node: `x.push(…)`, `x.unshift(…)`, `x[i] = …`.
fn grown_name(node: &AstNode) -> Option<&str> {
    match node.kind {
        NodeKind::Call => {
            let callee = node.callee()?;
            matches!(callee.member_property()?, "push" | "unshift" | "set" | "add")
                .then(|| callee.member_object()?.ident_name())
                .flatten()
        }
        NodeKind::Assignment => {
            let target = &node.children[0];
            if !target.is_computed_member() {
                return None;
            }
            target.member_object()?.ident_name()
        }
        _ => None,
    }
}

/// P4: allocations that should come from a pool: containers rebuilt on
/// every call, allocations in loops, and allocations in hot-path functions.
pub fn detect_p4(game: &[UnitRef<'_>], cfg: &AnalysisConfig) -> Vec<Finding> {
    let hot: Vec<String> = cfg.hot_path_lexicon.name_patterns.iter().map(|p| p.to_ascii_lowercase()).collect();
    let mut out = Vec::new();
    for script in game {
        let unit = script.unit;
        let Some(ast) = &unit.ast else { continue };
        let index = SiteIndex::new(ast);

        let mut containers: HashMap<(usize, &str), Vec<*const AstNode>> = HashMap::new();
        let mut grown: HashSet<(usize, &str)> = HashSet::new();
        let mut allocations: Vec<(&AstNode, Context)> = Vec::new();
        walk_with_ancestors(ast, &mut |node, ancestors| {
            let ctx = index.context(node, ancestors);
            if let (Some(func), Some(name)) = (ctx.func, grown_name(node)) {
                if ctx.in_loop {
                    grown.insert((func, name));
                }
            }
            if node.kind == NodeKind::Declarator {
                if let (Some(func), Some(name), Some(init)) =
                    (ctx.func, node.children[0].ident_name(), node.children.get(1))
                {
                    if is_container(init) {
                        containers.entry((func, name)).or_default().push(init as *const AstNode);
                    }
                }
            }
            if !is_allocation(node) {
                return;
            }
            let own_start = ancestors.iter().rposition(|a| a.is_function()).map_or(0, |i| i + 1);
            if ancestors[own_start..].iter().any(|a| is_allocation(a)) {
                return;
            }
            allocations.push((node, ctx));
        });
        let transient: HashSet<*const AstNode> =
            containers.into_iter().filter(|(key, _)| grown.contains(key)).flat_map(|(_, nodes)| nodes).collect();

        for (node, ctx) in allocations {
            if let Some(func) = ctx.func {
                let pooled = index.chain(func).any(|i| {
                    index.sites[i].name.as_deref().is_some_and(|n| n.to_ascii_lowercase().contains("pool"))
                });
                if pooled {
                    continue;
                }
            }
            let hot_function = ctx.func.and_then(|f| index.sites[f].name.as_deref()).is_some_and(|name| {
                let name = short_name(name).to_ascii_lowercase();
                hot.iter().any(|p| name.contains(p.as_str()))
            });
            let subkind = if transient.contains(&(node as *const AstNode)) {
                "transient-container"
            } else if ctx.in_loop {
                "alloc-in-loop"
            } else if hot_function {
                "hot-function-alloc"
            } else {
                continue;
            };
            let owner = ctx.func.map_or("<top-level>", |f| index.label(f));
            let evidence = format!("{owner}: {}", unit.slice(&node.span));
            out.push(Finding::pattern(PatternKind::P4, &unit.path, node.span, &evidence).with_subkind(subkind));
        }
    }
    sort_findings(&mut out);
    out
}
