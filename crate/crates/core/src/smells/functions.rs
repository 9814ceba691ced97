use crate::config::AnalysisConfig;
use crate::finding::{sort_findings, Finding, SmellKind};
use crate::frontend::ast::{AstNode, Attrs, NodeKind};
use crate::frontend::loc::count_lines;
use crate::frontend::visit::function_sites;
use crate::frontend::{extract_chains, ScopeModel, SourceUnit};

/// S3: catch blocks without statements; comments are not statements.
pub fn detect_s3(unit: &SourceUnit, _scopes: &ScopeModel, _cfg: &AnalysisConfig) -> Vec<Finding> {
    let Some(ast) = &unit.ast else { return Vec::new() };
    let mut out = Vec::new();
    ast.walk(&mut |node| {
        if node.kind == NodeKind::CatchClause && node.children.last().is_some_and(|b| b.children.is_empty()) {
            out.push(Finding::smell(SmellKind::S3, &unit.path, node.span, unit.slice(&node.span)));
        }
    });
    sort_findings(&mut out);
    out
}

/// S7: maximal member/call chains of at least `chain_min` links.
pub fn detect_s7(unit: &SourceUnit, _scopes: &ScopeModel, cfg: &AnalysisConfig) -> Vec<Finding> {
    let mut out: Vec<Finding> = extract_chains(unit)
        .into_iter()
        .filter(|c| c.length >= cfg.chain_min as usize)
        .map(|c| {
            Finding::smell(SmellKind::S7, &unit.path, c.span, &c.text).with_metric(c.length as f64, cfg.chain_min as f64)
        })
        .collect();
    sort_findings(&mut out);
    out
}

/// Lines of a function body that belong to the function itself: tokens
/// strictly inside the body braces, minus tokens of nested functions.
pub fn own_body_loc(unit: &SourceUnit, func: &AstNode) -> usize {
    let Some(body) = func.body() else { return 0 };
    let (start, end) = match body.attrs {
        Attrs::Block { synthetic: true } => (body.span.start, body.span.end),
        _ => (body.span.start + 1, body.span.end.saturating_sub(1)),
    };
    let mut nested = Vec::new();
    body.walk_own(&mut |n| {
        if n.is_function() {
            nested.push((n.span.start, n.span.end));
        }
    });
    count_lines(unit, start, end, &nested)
}

/// S8: functions whose own body LOC exceeds `method_loc_max`.
pub fn detect_s8(unit: &SourceUnit, _scopes: &ScopeModel, cfg: &AnalysisConfig) -> Vec<Finding> {
    let Some(ast) = &unit.ast else { return Vec::new() };
    let mut out = Vec::new();
    for site in function_sites(ast) {
        let loc = own_body_loc(unit, site.node);
        if loc > cfg.method_loc_max as usize {
            out.push(
                Finding::smell(SmellKind::S8, &unit.path, site.node.span, site.name.as_deref().unwrap_or("<anonymous>"))
                    .with_metric(loc as f64, cfg.method_loc_max as f64),
            );
        }
    }
    sort_findings(&mut out);
    out
}

/// S9: functions with more than `params_max` parameters (defaults and rest count).
pub fn detect_s9(unit: &SourceUnit, _scopes: &ScopeModel, cfg: &AnalysisConfig) -> Vec<Finding> {
    let Some(ast) = &unit.ast else { return Vec::new() };
    let mut out = Vec::new();
    for site in function_sites(ast) {
        let count = site.node.params().len();
        if count > cfg.params_max as usize {
            out.push(
                Finding::smell(SmellKind::S9, &unit.path, site.node.span, site.name.as_deref().unwrap_or("<anonymous>"))
                    .with_metric(count as f64, cfg.params_max as f64),
            );
        }
    }
    sort_findings(&mut out);
    out
}

/// Callback nesting depth of every callback function: the number of callbacks
/// on its enclosing-function chain, itself included. Returns (site index, depth, is_leaf).
pub fn callback_depths(ast: &AstNode) -> Vec<(usize, usize, bool)> {
    let sites = function_sites(ast);
    let mut depth = vec![0usize; sites.len()];
    let mut has_callback_child = vec![false; sites.len()];
    for (i, site) in sites.iter().enumerate() {
        let inherited = site.parent.map_or(0, |p| depth[p]);
        depth[i] = inherited + usize::from(site.is_callback);
        if site.is_callback {
            let mut up = site.parent;
            while let Some(p) = up {
                has_callback_child[p] = true;
                up = sites[p].parent;
            }
        }
    }
    sites
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_callback)
        .map(|(i, _)| (i, depth[i], !has_callback_child[i]))
        .collect()
}

/// S10: innermost callbacks nested at least `callback_depth` deep.
pub fn detect_s10(unit: &SourceUnit, _scopes: &ScopeModel, cfg: &AnalysisConfig) -> Vec<Finding> {
    let Some(ast) = &unit.ast else { return Vec::new() };
    let sites = function_sites(ast);
    let mut out = Vec::new();
    for (index, depth, leaf) in callback_depths(ast) {
        if leaf && depth >= cfg.callback_depth as usize {
            let node = sites[index].node;
            out.push(
                Finding::smell(SmellKind::S10, &unit.path, node.span, unit.slice(&node.span))
                    .with_metric(depth as f64, cfg.callback_depth as f64),
            );
        }
    }
    sort_findings(&mut out);
    out
}

/// Non-default `case` clauses of a switch.
pub fn case_count(switch: &AstNode) -> usize {
    switch.children.iter().filter(|c| matches!(c.attrs, Attrs::Case { is_default: false })).count()
}

/// S12: switch statements with at least `switch_cases_min` non-default cases.
pub fn detect_s12(unit: &SourceUnit, _scopes: &ScopeModel, cfg: &AnalysisConfig) -> Vec<Finding> {
    let Some(ast) = &unit.ast else { return Vec::new() };
    let mut out = Vec::new();
    ast.walk(&mut |node| {
        if node.kind == NodeKind::SwitchStmt {
            let cases = case_count(node);
            if cases >= cfg.switch_cases_min as usize {
                let head = unit.slice(&node.span).lines().next().unwrap_or("switch");
                out.push(
                    Finding::smell(SmellKind::S12, &unit.path, node.span, head)
                        .with_metric(cases as f64, cfg.switch_cases_min as f64),
                );
            }
        }
    });
    sort_findings(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smells::test_util::{js, run};

    #[test]
    fn empty_catch() {
        assert_eq!(run(detect_s3, "try{f()}catch(e){}").len(), 1);
        assert!(run(detect_s3, "try{f()}catch(e){ log(e) }").is_empty());
        assert_eq!(run(detect_s3, "try{f()}catch(e){ /* ignore */ }").len(), 1);
    }

    #[test]
    fn chains() {
        assert!(run(detect_s7, "a.b.c.d;").is_empty());
        let found = run(detect_s7, "a.b.c.d.e;");
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].metric, Some(4.0));
        assert_eq!(run(detect_s7, "a.b.c.d.e.f; g.h.i.j.k.l;").len(), 2);
    }

    fn function_with_body_lines(n: usize) -> String {
        let body: String = (0..n).map(|i| format!("  x{i}();\n")).collect();
        format!("function f() {{\n{body}}}\n")
    }

    #[test]
    fn long_method_boundary() {
        assert_eq!(run(detect_s8, &function_with_body_lines(51)).len(), 1);
        assert!(run(detect_s8, &function_with_body_lines(50)).is_empty());
    }

    #[test]
    fn nested_function_lines_are_excluded() {
        let inner: String = (0..55).map(|i| format!("    y{i}();\n")).collect();
        let src = format!("function outer() {{\n  a();\n  b();\n  c();\n  var g = function () {{\n{inner}  }};\n}}\n");
        let (unit, scopes) = js(&src);
        let sites = function_sites(unit.ast.as_ref().unwrap());
        assert_eq!(own_body_loc(&unit, sites[0].node), 5);
        assert_eq!(own_body_loc(&unit, sites[1].node), 55);
        let found = detect_s8(&unit, &scopes, &AnalysisConfig::default());
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].evidence, "g");
    }

    #[test]
    fn parameter_lists() {
        let found = run(detect_s9, "function f(a,b,c,d,e){}");
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].metric, Some(5.0));
        assert!(run(detect_s9, "function f(a,b,c,d){}").is_empty());
        assert_eq!(run(detect_s9, "function f(a,b,c,d,...r){}").len(), 1);
        assert_eq!(run(detect_s9, "var g = (a,b,c=1,d,{e}) => a;").len(), 1);
    }

    #[test]
    fn nested_callbacks() {
        let found = run(detect_s10, "f(x => g(y => h(z => k)));");
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].metric, Some(3.0));
        assert!(run(detect_s10, "f(function(){ return 1; });").is_empty());
        assert!(run(detect_s10, "f(handler); g(f(handler)); h(g(f(handler)));").is_empty());
    }

    #[test]
    fn switch_cases() {
        let found = run(detect_s12, "switch(a){case 1: case 2: case 3: case 4: break;}");
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].metric, Some(4.0));
        assert!(run(detect_s12, "switch(a){case 1: break; case 2: break; default: x();}").is_empty());
        assert!(run(detect_s12, "var a = 1;").is_empty());
    }
}
