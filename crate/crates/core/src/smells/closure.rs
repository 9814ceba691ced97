use crate::config::AnalysisConfig;
use crate::finding::{sort_findings, Finding, SmellKind};
use crate::frontend::ast::NodeKind;
use crate::frontend::scope::{DeclarationKind, ScopeKind};
use crate::frontend::visit::{function_sites, walk_this_scope};
use crate::frontend::{ScopeModel, SourceUnit};

fn shadowable(kind: DeclarationKind) -> bool {
    !matches!(kind, DeclarationKind::Implicit | DeclarationKind::FunctionName | DeclarationKind::ClassName)
}

fn starts_uppercase(name: &str) -> bool {
    name.chars().next().is_some_and(char::is_uppercase)
}

/// S1: deep function nesting, shadowed outer bindings, and `this` inside
/// plain nested functions.
pub fn detect_s1(unit: &SourceUnit, scopes: &ScopeModel, cfg: &AnalysisConfig) -> Vec<Finding> {
    let Some(ast) = &unit.ast else { return Vec::new() };
    let mut out = Vec::new();
    let sites = function_sites(ast);
    for site in &sites {
        let label = site.name.as_deref().unwrap_or("<anonymous>");
        if site.depth >= cfg.closure_depth as usize {
            out.push(
                Finding::smell(SmellKind::S1, &unit.path, site.node.span, label)
                    .with_metric(site.depth as f64, cfg.closure_depth as f64)
                    .with_subkind("depth"),
            );
        }
        let plain = site.node.kind != NodeKind::ArrowFunction
            && site.depth >= 2
            && !site.is_method
            && !site.is_bound
            && !site.short_name().is_some_and(starts_uppercase);
        if plain {
            let mut uses_this = false;
            walk_this_scope(site.node, &mut |n| uses_this |= n.kind == NodeKind::This);
            if uses_this {
                out.push(Finding::smell(SmellKind::S1, &unit.path, site.node.span, label).with_subkind("this-confusion"));
            }
        }
    }
    for scope in &scopes.scopes {
        if matches!(scope.kind, ScopeKind::Global | ScopeKind::Module) {
            continue;
        }
        for decl in scope.declarations.iter().filter(|d| shadowable(d.kind)) {
            let mut ancestor = scope.parent;
            while let Some(index) = ancestor {
                let outer = &scopes.scopes[index];
                if outer.declarations.iter().any(|d| d.name == decl.name && shadowable(d.kind)) {
                    out.push(
                        Finding::smell(SmellKind::S1, &unit.path, decl.span, &decl.name).with_subkind("shadowing"),
                    );
                    break;
                }
                ancestor = outer.parent;
            }
        }
    }
    sort_findings(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smells::test_util::run;

    fn subkinds(src: &str) -> Vec<String> {
        run(detect_s1, src).into_iter().filter_map(|f| f.subkind).collect()
    }

    #[test]
    fn four_deep_nesting() {
        let src = "var a = function(){ return function(){ return function(){ return function(){ return 1; }; }; }; };";
        assert_eq!(subkinds(src), ["depth"]);
    }

    #[test]
    fn shadowing() {
        assert_eq!(subkinds("var x; function f(){ var x; }"), ["shadowing"]);
        assert_eq!(subkinds("function f(a){ return function(a){ return a; }; }"), ["shadowing"]);
    }

    #[test]
    fn single_top_level_function() {
        assert!(subkinds("function f(){ return this; }").is_empty());
    }

    #[test]
    fn this_confusion() {
        assert_eq!(subkinds("function f(){ items.forEach(function(i){ this.total += i; }); }"), ["this-confusion"]);
        assert!(subkinds("function f(){ items.forEach(function(i){ this.total += i; }.bind(this)); }").is_empty());
        assert!(subkinds("function f(){ items.forEach((i) => { this.total += i; }); }").is_empty());
        assert!(subkinds("function f(){ var o = { m: function(){ return this; } }; function Inner(){ this.x = 1; } }").is_empty());
    }
}
