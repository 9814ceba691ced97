//! Ancestor-aware traversal and function bookkeeping shared by detectors.

use super::ast::{AstNode, Attrs, NodeKind};
use super::scope::path_of;

/// Pre-order walk handing each node its ancestor chain (root first).
pub fn walk_with_ancestors<'a>(root: &'a AstNode, f: &mut impl FnMut(&'a AstNode, &[&'a AstNode])) {
    let mut stack: Vec<&'a AstNode> = Vec::new();
    walk_inner(root, &mut stack, f);
}

fn walk_inner<'a>(node: &'a AstNode, stack: &mut Vec<&'a AstNode>, f: &mut impl FnMut(&'a AstNode, &[&'a AstNode])) {
    f(node, stack);
    stack.push(node);
    for child in &node.children {
        walk_inner(child, stack, f);
    }
    stack.pop();
}

fn is_child(parent: &AstNode, index: usize, node: &AstNode) -> bool {
    parent.children.get(index).is_some_and(|c| std::ptr::eq(c, node))
}

fn is_last_child(parent: &AstNode, node: &AstNode) -> bool {
    parent.children.last().is_some_and(|c| std::ptr::eq(c, node))
}

/// Name a function, class, or object literal is known by: its own name, or
/// the declarator / assignment target / property key it is bound to.
/// Object-literal members and class methods are qualified (`Game.update`).
pub fn binding_name(node: &AstNode, ancestors: &[&AstNode]) -> Option<String> {
    if let Some(name) = node.function_info().and_then(|f| f.name.clone()) {
        return Some(name);
    }
    if let Some(name) = node.class_name() {
        return Some(name.to_string());
    }
    let (parent, rest) = ancestors.split_last()?;
    match parent.kind {
        NodeKind::Declarator if is_child(parent, 1, node) => parent.children[0].ident_name().map(str::to_string),
        NodeKind::Assignment if is_child(parent, 1, node) => path_of(&parent.children[0]),
        NodeKind::Property | NodeKind::MethodDef if is_last_child(parent, node) => {
            let key = match parent.kind {
                NodeKind::Property => parent.property_info()?.key.clone()?,
                _ => parent.method_info()?.key.clone()?,
            };
            let (holder, above) = rest.split_last()?;
            match binding_name(holder, above) {
                Some(owner) => Some(format!("{owner}.{key}")),
                None => Some(key),
            }
        }
        _ => None,
    }
}

pub fn short_name(name: &str) -> &str {
    name.rsplit('.').next().unwrap_or(name)
}

#[derive(Debug, Clone)]
pub struct FunctionSite<'a> {
    pub node: &'a AstNode,
    /// Index of the nearest enclosing function in the site list.
    pub parent: Option<usize>,
    /// 1 for a function not nested in any other.
    pub depth: usize,
    pub name: Option<String>,
    /// Class method, object-literal member, or function assigned to a property.
    pub is_method: bool,
    /// Passed directly as a call or `new` argument.
    pub is_callback: bool,
    /// Receiver of `.bind`, `.call` or `.apply`.
    pub is_bound: bool,
    /// Operand of a `return` statement.
    pub is_returned: bool,
}

impl FunctionSite<'_> {
    pub fn short_name(&self) -> Option<&str> {
        self.name.as_deref().map(short_name)
    }
}

/// Every function in the tree, in pre-order.
pub fn function_sites(root: &AstNode) -> Vec<FunctionSite<'_>> {
    let mut sites: Vec<FunctionSite> = Vec::new();
    let mut open: Vec<(usize, usize)> = Vec::new();
    walk_with_ancestors(root, &mut |node, ancestors| {
        if !node.is_function() {
            return;
        }
        while let Some(&(index, position)) = open.last() {
            if position < ancestors.len() && std::ptr::eq(ancestors[position], sites[index].node) {
                break;
            }
            open.pop();
        }
        let parent = open.last().map(|&(i, _)| i);
        let depth = parent.map_or(1, |p| sites[p].depth + 1);
        let direct = ancestors.last();
        let is_method = direct.is_some_and(|p| match p.kind {
            NodeKind::MethodDef | NodeKind::Property => true,
            NodeKind::Assignment => is_child(p, 1, node) && p.children[0].kind == NodeKind::Member,
            _ => false,
        });
        let is_callback = direct.is_some_and(|p| matches!(p.kind, NodeKind::Call | NodeKind::New) && !is_child(p, 0, node));
        let is_bound = direct.is_some_and(|p| {
            p.kind == NodeKind::Member
                && is_child(p, 0, node)
                && matches!(p.member_property(), Some("bind" | "call" | "apply"))
        });
        let is_returned = direct.is_some_and(|p| {
            p.kind == NodeKind::Return || matches!(p.attrs, Attrs::Block { synthetic: true })
        });
        sites.push(FunctionSite {
            node,
            parent,
            depth,
            name: binding_name(node, ancestors),
            is_method,
            is_callback,
            is_bound,
            is_returned,
        });
        open.push((sites.len() - 1, ancestors.len()));
    });
    sites
}

/// Visits nodes belonging to `func` itself: descends into arrow functions
/// (which share `this`) but not into other nested functions.
pub fn walk_this_scope<'a>(func: &'a AstNode, f: &mut impl FnMut(&'a AstNode)) {
    for child in &func.children {
        f(child);
        if !child.is_function() || child.kind == NodeKind::ArrowFunction {
            walk_this_scope(child, f);
        }
    }
}
