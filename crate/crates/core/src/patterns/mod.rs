//! Detectors for the four violated game-programming patterns.
//!
//! Every detector sees the whole game and returns findings in canonical order.

mod component;
mod event_queue;
mod locality;
mod pool;

use std::collections::{BTreeSet, HashMap};

pub use component::detect_p1;
pub use event_queue::detect_p2;
pub use locality::detect_p3;
pub use pool::detect_p4;

use crate::config::{AnalysisConfig, ComponentLexicon};
use crate::finding::{sort_findings, Finding, Kind, PatternKind};
use crate::frontend::ast::{AstNode, NodeKind};
use crate::frontend::visit::FunctionSite;
use crate::game::{GameUnits, UnitRef};

/// Identifier and member-name tokens of a chain, innermost link first
/// (`this.load.audio(x)` gives `audio, load`).
pub(crate) fn chain_tokens(node: &AstNode) -> Vec<&str> {
    let mut tokens = Vec::new();
    let mut cur = node;
    loop {
        match cur.kind {
            NodeKind::Member => {
                if let Some(p) = cur.member_property() {
                    tokens.push(p);
                }
                cur = &cur.children[0];
            }
            NodeKind::Call => cur = &cur.children[0],
            NodeKind::Identifier => {
                tokens.extend(cur.ident_name());
                break;
            }
            _ => break,
        }
    }
    tokens
}

fn pattern_matches(pattern: &str, token: &str) -> bool {
    match pattern.strip_suffix('*') {
        Some(prefix) => token.starts_with(prefix),
        None => token == pattern,
    }
}

/// First category, in alphabetical order, with a pattern matching any token
/// of the node's identifier/member chain.
pub fn classify_component<'l>(node: &AstNode, lexicon: &'l ComponentLexicon) -> Option<&'l str> {
    if !matches!(node.kind, NodeKind::Identifier | NodeKind::Member | NodeKind::Call) {
        return None;
    }
    let tokens: Vec<String> = chain_tokens(node).into_iter().map(str::to_ascii_lowercase).collect();
    lexicon
        .categories
        .iter()
        .find(|(_, patterns)| patterns.iter().any(|p| tokens.iter().any(|t| pattern_matches(p, t))))
        .map(|(category, _)| category.as_str())
}

/// Where a node sits: its innermost enclosing function (by site index) and
/// whether it runs inside a loop body of that function.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Context {
    pub func: Option<usize>,
    pub in_loop: bool,
}

pub(crate) struct SiteIndex<'a> {
    pub sites: Vec<FunctionSite<'a>>,
    by_node: HashMap<*const AstNode, usize>,
}

impl<'a> SiteIndex<'a> {
    pub fn new(root: &'a AstNode) -> Self {
        let sites = crate::frontend::visit::function_sites(root);
        let by_node = sites.iter().enumerate().map(|(i, s)| (s.node as *const AstNode, i)).collect();
        SiteIndex { sites, by_node }
    }

    pub fn index_of(&self, node: &AstNode) -> Option<usize> {
        self.by_node.get(&(node as *const AstNode)).copied()
    }

    pub fn context(&self, node: &AstNode, ancestors: &[&AstNode]) -> Context {
        let inner = ancestors.iter().rposition(|a| a.is_function());
        let func = inner.and_then(|i| self.index_of(ancestors[i]));
        let from = inner.map_or(0, |i| i + 1);
        let in_loop = (from..ancestors.len()).any(|i| {
            let next = ancestors.get(i + 1).copied().unwrap_or(node);
            ancestors[i].kind == NodeKind::Loop && ancestors[i].loop_body().is_some_and(|b| std::ptr::eq(b, next))
        });
        Context { func, in_loop }
    }

    /// Site indices from `index` outwards.
    pub fn chain(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(Some(index), |&i| self.sites[i].parent)
    }

    pub fn label(&self, index: usize) -> &str {
        self.sites[index].name.as_deref().unwrap_or("<anonymous>")
    }
}

pub fn detect_pattern(kind: PatternKind, game: &[UnitRef<'_>], cfg: &AnalysisConfig) -> Vec<Finding> {
    match kind {
        PatternKind::P1 => detect_p1(game, cfg),
        PatternKind::P2 => detect_p2(game, cfg),
        PatternKind::P3 => detect_p3(game, cfg),
        PatternKind::P4 => detect_p4(game, cfg),
    }
}

/// All enabled pattern detectors over one game.
pub fn run_patterns(game: &GameUnits, enabled: &BTreeSet<Kind>, cfg: &AnalysisConfig) -> Vec<Finding> {
    let scripts = game.scripts();
    let mut findings: Vec<Finding> = PatternKind::ALL
        .into_iter()
        .filter(|k| enabled.contains(&Kind::Pattern(*k)))
        .flat_map(|k| detect_pattern(k, &scripts, cfg))
        .collect();
    sort_findings(&mut findings);
    findings
}
