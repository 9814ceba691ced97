use std::sync::LazyLock;

use regex::Regex;

use crate::config::AnalysisConfig;
use crate::finding::{sort_findings, Finding, SmellKind};
use crate::frontend::ast::{AstNode, Attrs, NodeKind};
use crate::frontend::{ScopeModel, ScriptOrigin, SourceKind, SourceUnit};

static TAG: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r#"</?[A-Za-z][A-Za-z0-9-]*(?:\s+[A-Za-z_:@][-A-Za-z0-9_:.]*(?:\s*=\s*(?:"[^"]*"|'[^']*'|[^\s"'=<>`]+))?)*\s*/?>"#)
        .expect("tag regex"));

static CSS_RULE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"[^{}\s][^{}]*\{\s*[A-Za-z-]+\s*:\s*[^{};]+(?:;\s*[A-Za-z-]+\s*:\s*[^{};]+)*;?\s*\}").expect("css regex")
});

pub fn count_tags(text: &str) -> usize {
    TAG.find_iter(text).count()
}

fn literal_text(node: &AstNode) -> Option<String> {
    match (&node.kind, &node.attrs) {
        (NodeKind::Literal, _) => node.string_value().map(str::to_string),
        (NodeKind::TemplateLiteral, Attrs::Template { quasis }) => Some(quasis.join("x")),
        _ => None,
    }
}

fn is_style_target(target: &AstNode) -> bool {
    target.kind == NodeKind::Member && target.member_object().is_some_and(|o| o.member_property() == Some("style"))
}

/// S2: inline JS in HTML, markup built in JS strings, and styling done from JS.
pub fn detect_s2(unit: &SourceUnit, _scopes: &ScopeModel, cfg: &AnalysisConfig) -> Vec<Finding> {
    let mut out = Vec::new();
    if unit.kind == SourceKind::Html {
        for script in &unit.embedded {
            if script.origin == ScriptOrigin::JavascriptHref {
                continue;
            }
            let evidence = match &script.attribute {
                Some(attr) => format!("{attr}=\"{}\"", script.code),
                None => format!("<script>{}", script.code),
            };
            out.push(Finding::smell(SmellKind::S2, &unit.path, script.html_span, &evidence).with_subkind("js-in-html"));
        }
        sort_findings(&mut out);
        return out;
    }
    let Some(ast) = &unit.ast else { return out };
    let min_tags = cfg.html_string_min_tags as usize;
    ast.walk(&mut |node| {
        if let Some(text) = literal_text(node) {
            let tags = count_tags(&text);
            if tags >= min_tags {
                out.push(
                    Finding::smell(SmellKind::S2, &unit.path, node.span, &text)
                        .with_metric(tags as f64, min_tags as f64)
                        .with_subkind("html-in-js"),
                );
            }
            if CSS_RULE.is_match(&text) {
                out.push(Finding::smell(SmellKind::S2, &unit.path, node.span, &text).with_subkind("css-in-js"));
            }
        }
        if node.kind == NodeKind::Assignment && is_style_target(&node.children[0]) {
            let evidence = unit.slice(&node.span);
            out.push(Finding::smell(SmellKind::S2, &unit.path, node.span, evidence).with_subkind("css-in-js"));
        }
    });
    sort_findings(&mut out);
    out
}
