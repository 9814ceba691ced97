//! Member/call chains: `a.b().c[d]` is one chain of length 4 rooted at `a`.

use super::ast::{AstNode, NodeKind, Span};
use super::SourceUnit;

#[derive(Debug, Clone, PartialEq)]
pub struct MemberChain {
    /// Source text of the root expression.
    pub root: String,
    pub length: usize,
    pub span: Span,
    /// Whitespace-collapsed source text of the chain, at most 200 chars.
    pub text: String,
}

fn is_link(node: &AstNode) -> bool {
    matches!(node.kind, NodeKind::Member | NodeKind::Call)
}

fn chain_root(node: &AstNode) -> (&AstNode, usize) {
    let mut cur = node;
    let mut length = 0;
    while is_link(cur) {
        length += 1;
        cur = &cur.children[0];
    }
    (cur, length)
}

pub fn collapse_text(text: &str, max: usize) -> String {
    let collapsed = text.split_whitespace().collect::<Vec<_>>().join(" ");
    match collapsed.char_indices().nth(max) {
        Some((cut, _)) => collapsed[..cut].to_string(),
        None => collapsed,
    }
}

/// Every maximal chain in the unit, in source order.
pub fn extract_chains(unit: &SourceUnit) -> Vec<MemberChain> {
    let mut out = Vec::new();
    if let Some(ast) = &unit.ast {
        visit(ast, false, unit, &mut out);
    }
    out
}

/// `extends_parent` is true when the parent link continues this node's chain.
fn visit(node: &AstNode, extends_parent: bool, unit: &SourceUnit, out: &mut Vec<MemberChain>) {
    if is_link(node) && !extends_parent {
        let (root, length) = chain_root(node);
        out.push(MemberChain {
            root: unit.slice(&root.span).to_string(),
            length,
            span: node.span,
            text: collapse_text(unit.slice(&node.span), 200),
        });
    }
    for (i, child) in node.children.iter().enumerate() {
        visit(child, i == 0 && is_link(node), unit, out);
    }
}
