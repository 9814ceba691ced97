use std::collections::BTreeSet;

use crate::config::AnalysisConfig;
use crate::finding::{sort_findings, Finding, SmellKind};
use crate::frontend::ast::{AstNode, MethodKind, NodeKind};
use crate::frontend::visit::{binding_name, walk_this_scope, walk_with_ancestors};
use crate::frontend::{ScopeModel, SourceUnit};

/// Own properties plus methods of an object literal or class. For classes,
/// `this.x = …` assignments in the constructor count as properties.
pub fn object_member_count(node: &AstNode) -> usize {
    match node.kind {
        NodeKind::ObjectLiteral => node.children.len(),
        NodeKind::ClassDecl | NodeKind::ClassExpr => {
            let mut names = BTreeSet::new();
            let mut unnamed = 0;
            for member in node.class_members() {
                let Some(info) = member.method_info() else { continue };
                if info.kind == MethodKind::Constructor {
                    if let Some(ctor) = member.member_value() {
                        walk_this_scope(ctor, &mut |n| {
                            if n.kind == NodeKind::Assignment {
                                let target = &n.children[0];
                                if target.member_object().is_some_and(|o| o.kind == NodeKind::This) {
                                    if let Some(p) = target.member_property() {
                                        names.insert(p.to_string());
                                    }
                                }
                            }
                        });
                    }
                    continue;
                }
                match &info.key {
                    Some(key) => {
                        names.insert(key.clone());
                    }
                    None => unnamed += 1,
                }
            }
            names.len() + unnamed
        }
        _ => 0,
    }
}

fn is_object_like(node: &AstNode) -> bool {
    matches!(node.kind, NodeKind::ObjectLiteral | NodeKind::ClassDecl | NodeKind::ClassExpr)
}

fn label(node: &AstNode, ancestors: &[&AstNode]) -> String {
    binding_name(node, ancestors).unwrap_or_else(|| "<anonymous>".to_string())
}

/// S5: objects and classes with at least `large_object_props` members.
pub fn detect_s5(unit: &SourceUnit, _scopes: &ScopeModel, cfg: &AnalysisConfig) -> Vec<Finding> {
    let Some(ast) = &unit.ast else { return Vec::new() };
    let mut out = Vec::new();
    walk_with_ancestors(ast, &mut |node, ancestors| {
        if !is_object_like(node) {
            return;
        }
        let count = object_member_count(node);
        if count >= cfg.large_object_props as usize {
            out.push(
                Finding::smell(SmellKind::S5, &unit.path, node.span, &label(node, ancestors))
                    .with_metric(count as f64, cfg.large_object_props as f64),
            );
        }
    });
    sort_findings(&mut out);
    out
}

/// S6: named objects and classes with fewer than `lazy_object_props` members.
/// Anonymous literals (option bags passed inline) are exempt.
pub fn detect_s6(unit: &SourceUnit, _scopes: &ScopeModel, cfg: &AnalysisConfig) -> Vec<Finding> {
    let Some(ast) = &unit.ast else { return Vec::new() };
    let mut out = Vec::new();
    walk_with_ancestors(ast, &mut |node, ancestors| {
        if !is_object_like(node) {
            return;
        }
        let Some(name) = binding_name(node, ancestors) else { return };
        let count = object_member_count(node);
        if count < cfg.lazy_object_props as usize {
            out.push(
                Finding::smell(SmellKind::S6, &unit.path, node.span, &name)
                    .with_metric(count as f64, cfg.lazy_object_props as f64)
                    .with_subkind("static-lazy"),
            );
        }
    });
    sort_findings(&mut out);
    out
}
