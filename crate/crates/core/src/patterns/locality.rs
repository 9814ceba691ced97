use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::SiteIndex;
use crate::config::AnalysisConfig;
use crate::finding::{sort_findings, Finding, PatternKind};
use crate::frontend::ast::{AstNode, LiteralValue, NodeKind, PropKind};
use crate::frontend::scope::path_of;
use crate::frontend::visit::{binding_name, walk_with_ancestors};
use crate::game::UnitRef;

fn is_primitive(node: &AstNode) -> bool {
    match node.kind {
        NodeKind::Literal => !matches!(node.literal(), Some(LiteralValue::Regex { .. })),
        NodeKind::Unary => {
            matches!(node.op(), Some("-" | "+")) && node.children.first().is_some_and(|c| c.kind == NodeKind::Literal)
        }
        NodeKind::TemplateLiteral => node.children.is_empty(),
        _ => false,
    }
}

/// Static keys of a plain `{key: value}` literal; `None` when any member is
/// computed, spread, or a method.
fn plain_keys(literal: &AstNode) -> Option<Vec<&str>> {
    literal
        .children
        .iter()
        .map(|p| {
            let info = p.property_info()?;
            if info.computed || !matches!(info.kind, PropKind::Init | PropKind::Shorthand) {
                return None;
            }
            info.key.as_deref()
        })
        .collect()
}

/// `window.X` and `globalThis.X` name the same object as `X`.
fn global_path(path: &str) -> &str {
    path.strip_prefix("window.").or_else(|| path.strip_prefix("globalThis.")).unwrap_or(path)
}

struct Struct<'a> {
    unit: usize,
    name: String,
    path: String,
    node: &'a AstNode,
    keys: BTreeSet<&'a str>,
    global: bool,
}

/// Where members of a named struct are read: distinct (unit, function)
/// pairs, and whether any read happens inside a loop.
#[derive(Default)]
struct Usage {
    functions: BTreeSet<(usize, Option<usize>)>,
    in_loop: bool,
}

/// Groups of at least `min` declarations in one statement list whose object
/// literals share the same key set.
fn parallel_groups(ast: &AstNode, min: usize) -> Vec<Vec<(&AstNode, &AstNode)>> {
    let mut groups = Vec::new();
    ast.walk(&mut |node| {
        let mut by_shape: BTreeMap<Vec<&str>, Vec<(&AstNode, &AstNode)>> = BTreeMap::new();
        for stmt in node.statements().iter().filter(|s| s.kind == NodeKind::VarDecl) {
            for decl in &stmt.children {
                let Some(init) = decl.children.get(1).filter(|i| i.kind == NodeKind::ObjectLiteral) else { continue };
                let Some(mut keys) = plain_keys(init) else { continue };
                if keys.is_empty() {
                    continue;
                }
                keys.sort_unstable();
                keys.dedup();
                by_shape.entry(keys).or_default().push((decl, init));
            }
        }
        groups.extend(by_shape.into_values().filter(|g| g.len() >= min));
    });
    groups
}

/// P3: hot all-primitive structs and runs of same-shape object declarations,
/// both candidates for a contiguous array layout. A literal with a same-shape
/// sibling is judged only as part of its group.
pub fn detect_p3(game: &[UnitRef<'_>], cfg: &AnalysisConfig) -> Vec<Finding> {
    let mut out = Vec::new();
    let mut grouped: HashSet<*const AstNode> = HashSet::new();
    let mut structs: Vec<Struct> = Vec::new();

    for (u, script) in game.iter().enumerate() {
        let unit = script.unit;
        let Some(ast) = &unit.ast else { continue };
        for group in parallel_groups(ast, 2) {
            grouped.extend(group.iter().map(|(_, init)| *init as *const AstNode));
            if group.len() < cfg.parallel_objects_min as usize {
                continue;
            }
            let (first, last) = (group[0].0, group[group.len() - 1].0);
            let names: Vec<&str> = group.iter().filter_map(|(d, _)| d.children[0].ident_name()).collect();
            out.push(
                Finding::pattern(PatternKind::P3, &unit.path, unit.span(first.span.start, last.span.end), &names.join(", "))
                    .with_metric(group.len() as f64, cfg.parallel_objects_min as f64)
                    .with_subkind("parallel-objects"),
            );
        }

        let index = SiteIndex::new(ast);
        walk_with_ancestors(ast, &mut |node, ancestors| {
            if node.kind != NodeKind::ObjectLiteral || grouped.contains(&(node as *const AstNode)) {
                return;
            }
            if node.children.len() < cfg.hot_struct_min_props as usize
                || !node.children.iter().all(|p| p.member_value().is_some_and(is_primitive))
            {
                return;
            }
            let Some(keys) = plain_keys(node) else { return };
            let Some(name) = binding_name(node, ancestors) else { return };
            let top_level = index.context(node, ancestors).func.is_none();
            let global = top_level && script.scopes.global(&name).is_some_and(|g| g.is_defined());
            let path = global_path(&name).to_string();
            structs.push(Struct { unit: u, name, path, node, keys: keys.into_iter().collect(), global });
        });
    }

    if !structs.is_empty() {
        let names: BTreeSet<&str> = structs.iter().map(|s| s.path.as_str()).collect();
        let mut usage: BTreeMap<(String, String), Usage> = BTreeMap::new();
        for (u, script) in game.iter().enumerate() {
            let Some(ast) = &script.unit.ast else { continue };
            let index = SiteIndex::new(ast);
            walk_with_ancestors(ast, &mut |node, ancestors| {
                if node.kind != NodeKind::Member {
                    return;
                }
                let Some(field) = node.member_property() else { return };
                let Some(object) = node.member_object().and_then(path_of) else { return };
                let object = global_path(&object).to_string();
                if !names.contains(object.as_str()) {
                    return;
                }
                let written = ancestors.last().is_some_and(|p| {
                    p.kind == NodeKind::Assignment && p.op() == Some("=") && std::ptr::eq(&p.children[0], node)
                });
                if written {
                    return;
                }
                let ctx = index.context(node, ancestors);
                let entry = usage.entry((object, field.to_string())).or_default();
                entry.functions.insert((u, ctx.func));
                entry.in_loop |= ctx.in_loop;
            });
        }
        for s in &structs {
            let mut functions = BTreeSet::new();
            let mut in_loop = false;
            for key in &s.keys {
                if let Some(used) = usage.get(&(s.path.clone(), key.to_string())) {
                    functions.extend(used.functions.iter().copied());
                    in_loop |= used.in_loop;
                }
            }
            if functions.len() >= 2 || in_loop || s.global {
                let unit = game[s.unit].unit;
                out.push(
                    Finding::pattern(PatternKind::P3, &unit.path, s.node.span, &s.name)
                        .with_metric(s.keys.len() as f64, cfg.hot_struct_min_props as f64)
                        .with_subkind("hot-struct"),
                );
            }
        }
    }
    sort_findings(&mut out);
    out
}
