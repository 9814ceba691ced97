//! Lexical scopes, global-variable identification, and inheritance links.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::ast::{AstNode, Attrs, DeclKind, LoopKind, MethodKind, NodeKind, Span};
use super::SourceUnit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ScopeKind {
    Global,
    Module,
    Function,
    Block,
    Catch,
    Class,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DeclarationKind {
    Var,
    Let,
    Const,
    Function,
    Param,
    Class,
    CatchParam,
    Import,
    /// Name of a named function expression, visible only inside it.
    FunctionName,
    /// Name of a named class expression, visible only inside it.
    ClassName,
    /// `arguments` inside non-arrow functions.
    Implicit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Declaration {
    pub name: String,
    pub kind: DeclarationKind,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Resolution {
    Declared { scope: usize, index: usize },
    Global,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reference {
    pub name: String,
    pub span: Span,
    pub write: bool,
    pub resolution: Resolution,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scope {
    pub kind: ScopeKind,
    pub parent: Option<usize>,
    pub owner: String,
    pub span: Span,
    pub declarations: Vec<Declaration>,
    pub references: Vec<Reference>,
}

impl Scope {
    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.declarations.iter().position(|d| d.name == name)
    }
}

/// A name living in the global object. Names that are only read (browser
/// builtins, globals defined by other files) have no definition sites.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct GlobalVar {
    pub name: String,
    pub definition_sites: Vec<Span>,
    pub reference_sites: Vec<Span>,
}

impl GlobalVar {
    pub fn is_defined(&self) -> bool {
        !self.definition_sites.is_empty()
    }
}

/// Members and `this`/`super` usage collected for one class, constructor
/// function, or object literal.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct TypeShape {
    pub name: String,
    pub members: BTreeSet<String>,
    pub used: BTreeSet<String>,
    pub parent: Option<String>,
    pub span: Span,
}

impl TypeShape {
    fn absorb(&mut self, other: &TypeShape) {
        self.members.extend(other.members.iter().cloned());
        self.used.extend(other.used.iter().cloned());
        if self.parent.is_none() && other.parent.is_some() {
            self.parent.clone_from(&other.parent);
            self.span = other.span;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InheritanceEdge {
    pub child: String,
    pub parent: String,
    pub inherited: BTreeSet<String>,
    pub overridden: BTreeSet<String>,
    pub used: BTreeSet<String>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScopeModel {
    /// Index 0 is the program scope.
    pub scopes: Vec<Scope>,
    /// Sorted by name.
    pub globals: Vec<GlobalVar>,
    pub inheritance: Vec<InheritanceEdge>,
    /// Sorted by name.
    pub shapes: Vec<TypeShape>,
    /// Names exported through ES module syntax.
    pub exports: BTreeSet<String>,
    pub is_module: bool,
}

impl ScopeModel {
    pub fn empty() -> Self {
        ScopeModel {
            scopes: Vec::new(),
            globals: Vec::new(),
            inheritance: Vec::new(),
            shapes: Vec::new(),
            exports: BTreeSet::new(),
            is_module: false,
        }
    }

    pub fn global(&self, name: &str) -> Option<&GlobalVar> {
        self.globals.binary_search_by(|g| g.name.as_str().cmp(name)).ok().map(|i| &self.globals[i])
    }

    /// Globals this unit creates (the s4 population).
    pub fn defined_globals(&self) -> impl Iterator<Item = &GlobalVar> {
        self.globals.iter().filter(|g| g.is_defined())
    }

    pub fn defined_global_names(&self) -> BTreeSet<String> {
        self.defined_globals().map(|g| g.name.clone()).collect()
    }

    pub fn references(&self) -> impl Iterator<Item = &Reference> {
        self.scopes.iter().flat_map(|s| s.references.iter())
    }
}

/// Builds the scope model of a parsed unit; unparsed units get an empty model.
pub fn build_scopes(unit: &SourceUnit) -> ScopeModel {
    let Some(program) = unit.ast.as_ref() else {
        return ScopeModel::empty();
    };
    let mut b = Builder { scopes: Vec::new(), globals: BTreeMap::new(), exports: BTreeSet::new(), is_module: unit.is_module };
    b.program(program);
    let shapes = collect_shapes(program);
    let shape_list: Vec<&TypeShape> = shapes.values().collect();
    let inheritance = resolve_inheritance(&shape_list);
    ScopeModel {
        scopes: b.scopes,
        globals: b.globals.into_values().collect(),
        inheritance,
        shapes: shapes.into_values().collect(),
        exports: b.exports,
        is_module: unit.is_module,
    }
}

struct Builder {
    scopes: Vec<Scope>,
    globals: BTreeMap<String, GlobalVar>,
    exports: BTreeSet<String>,
    is_module: bool,
}

fn pattern_names<'a>(pattern: &'a AstNode, out: &mut Vec<(&'a str, Span)>) {
    match pattern.kind {
        NodeKind::Identifier => {
            if let Some(name) = pattern.ident_name() {
                out.push((name, pattern.span));
            }
        }
        NodeKind::DefaultValue | NodeKind::Rest => {
            if let Some(target) = pattern.children.first() {
                pattern_names(target, out);
            }
        }
        NodeKind::ArrayPattern => pattern.children.iter().for_each(|c| pattern_names(c, out)),
        NodeKind::ObjectPattern => {
            for prop in &pattern.children {
                if let Some(value) = prop.children.last() {
                    pattern_names(value, out);
                }
            }
        }
        _ => {}
    }
}

/// Unwraps `export` and labels around a declaration.
fn declaration_of(stmt: &AstNode) -> &AstNode {
    match stmt.kind {
        NodeKind::Export | NodeKind::Labeled => stmt.children.first().map_or(stmt, declaration_of),
        _ => stmt,
    }
}

fn var_kind(node: &AstNode) -> Option<DeclKind> {
    match node.attrs {
        Attrs::Var(kind) if node.kind == NodeKind::VarDecl => Some(kind),
        _ => None,
    }
}

impl Builder {
    fn push_scope(&mut self, kind: ScopeKind, parent: Option<usize>, owner: &AstNode) -> usize {
        let owner_name = match owner.kind {
            NodeKind::FunctionDecl | NodeKind::FunctionExpr | NodeKind::ArrowFunction => {
                owner.function_info().and_then(|f| f.name.clone()).unwrap_or_else(|| format!("{:?}", owner.kind))
            }
            _ => format!("{:?}", owner.kind),
        };
        self.scopes.push(Scope {
            kind,
            parent,
            owner: owner_name,
            span: owner.span,
            declarations: Vec::new(),
            references: Vec::new(),
        });
        self.scopes.len() - 1
    }

    fn declare(&mut self, scope: usize, name: &str, kind: DeclarationKind, span: Span) {
        if self.scopes[scope].lookup(name).is_some() {
            return;
        }
        self.scopes[scope].declarations.push(Declaration { name: name.to_string(), kind, span });
        if scope == 0
            && !self.is_module
            && matches!(kind, DeclarationKind::Var | DeclarationKind::Function)
        {
            self.global_entry(name).definition_sites.push(span);
        }
    }

    fn global_entry(&mut self, name: &str) -> &mut GlobalVar {
        self.globals.entry(name.to_string()).or_insert_with(|| GlobalVar { name: name.to_string(), ..Default::default() })
    }

    fn resolve(&self, mut scope: usize, name: &str) -> Option<(usize, usize)> {
        loop {
            if let Some(index) = self.scopes[scope].lookup(name) {
                return Some((scope, index));
            }
            scope = self.scopes[scope].parent?;
        }
    }

    fn reference(&mut self, scope: usize, name: &str, span: Span, write: bool) {
        let resolution = match self.resolve(scope, name) {
            Some((s, index)) => {
                let kind = self.scopes[s].declarations[index].kind;
                if s == 0 && !self.is_module && matches!(kind, DeclarationKind::Var | DeclarationKind::Function) {
                    self.global_entry(name).reference_sites.push(span);
                }
                Resolution::Declared { scope: s, index }
            }
            None => {
                let entry = self.global_entry(name);
                if write {
                    entry.definition_sites.push(span);
                } else {
                    entry.reference_sites.push(span);
                }
                Resolution::Global
            }
        };
        self.scopes[scope].references.push(Reference { name: name.to_string(), span, write, resolution });
    }

    /// Declares `var` bindings and (at function level) function declarations
    /// found anywhere in `node` without entering nested functions.
    fn hoist_vars(&mut self, node: &AstNode, scope: usize) {
        for child in &node.children {
            if child.is_function() || child.is_class() {
                continue;
            }
            if var_kind(child) == Some(DeclKind::Var) {
                for declarator in &child.children {
                    let mut names = Vec::new();
                    if let Some(target) = declarator.children.first() {
                        pattern_names(target, &mut names);
                    }
                    for (name, span) in names {
                        self.declare(scope, name, DeclarationKind::Var, span);
                    }
                }
            }
            self.hoist_vars(child, scope);
        }
    }

    /// Declares let/const/class/function/import bindings of a statement list.
    fn declare_lexical(&mut self, statements: &[AstNode], scope: usize) {
        for stmt in statements {
            if let Attrs::Import(info) = &stmt.attrs {
                for (_, local) in &info.bindings {
                    self.declare(scope, local, DeclarationKind::Import, stmt.span);
                }
                continue;
            }
            let decl = declaration_of(stmt);
            let exported = stmt.kind == NodeKind::Export;
            match decl.kind {
                NodeKind::FunctionDecl => {
                    if let Some(name) = decl.function_info().and_then(|f| f.name.as_deref()) {
                        self.declare(scope, name, DeclarationKind::Function, decl.span);
                        if exported {
                            self.exports.insert(name.to_string());
                        }
                    }
                }
                NodeKind::ClassDecl => {
                    if let Some(name) = decl.class_name() {
                        self.declare(scope, name, DeclarationKind::Class, decl.span);
                        if exported {
                            self.exports.insert(name.to_string());
                        }
                    }
                }
                NodeKind::VarDecl => {
                    let kind = match var_kind(decl) {
                        Some(DeclKind::Let) => Some(DeclarationKind::Let),
                        Some(DeclKind::Const) => Some(DeclarationKind::Const),
                        _ => None,
                    };
                    let mut names = Vec::new();
                    for declarator in &decl.children {
                        if let Some(target) = declarator.children.first() {
                            pattern_names(target, &mut names);
                        }
                    }
                    for (name, span) in names {
                        if let Some(kind) = kind {
                            self.declare(scope, name, kind, span);
                        }
                        if exported {
                            self.exports.insert(name.to_string());
                        }
                    }
                }
                _ => {}
            }
        }
    }

    fn program(&mut self, program: &AstNode) {
        let kind = if self.is_module { ScopeKind::Module } else { ScopeKind::Global };
        let root = self.push_scope(kind, None, program);
        self.declare_lexical(&program.children, root);
        self.hoist_vars(program, root);
        for stmt in &program.children {
            self.node(stmt, root);
        }
    }

    fn block(&mut self, block: &AstNode, parent: usize) {
        let scope = self.push_scope(ScopeKind::Block, Some(parent), block);
        self.declare_lexical(block.statements(), scope);
        for stmt in &block.children {
            self.node(stmt, scope);
        }
    }

    fn function(&mut self, func: &AstNode, parent: usize) {
        let scope = self.push_scope(ScopeKind::Function, Some(parent), func);
        let info = func.function_info();
        if func.kind == NodeKind::FunctionExpr {
            if let Some(name) = info.and_then(|f| f.name.as_deref()) {
                self.declare(scope, name, DeclarationKind::FunctionName, func.span);
            }
        }
        for param in func.params() {
            let mut names = Vec::new();
            pattern_names(param, &mut names);
            for (name, span) in names {
                self.declare(scope, name, DeclarationKind::Param, span);
            }
        }
        if func.kind != NodeKind::ArrowFunction {
            self.declare(scope, "arguments", DeclarationKind::Implicit, func.span);
        }
        let Some(body) = func.body() else { return };
        self.declare_lexical(body.statements(), scope);
        self.hoist_vars(body, scope);
        for param in func.params() {
            self.pattern(param, scope, None);
        }
        for stmt in &body.children {
            self.node(stmt, scope);
        }
    }

    fn class(&mut self, class: &AstNode, parent: usize) {
        if let Some(superclass) = class.superclass() {
            self.node(superclass, parent);
        }
        let scope = self.push_scope(ScopeKind::Class, Some(parent), class);
        if class.kind == NodeKind::ClassExpr {
            if let Some(name) = class.class_name() {
                self.declare(scope, name, DeclarationKind::ClassName, class.span);
            }
        }
        for member in class.class_members() {
            for child in &member.children {
                self.node(child, scope);
            }
        }
    }

    /// Visits a binding or assignment pattern. `write` is `Some(compound)` for
    /// assignment targets and `None` for declaration bindings.
    fn pattern(&mut self, node: &AstNode, scope: usize, write: Option<bool>) {
        match node.kind {
            NodeKind::Identifier => {
                if let (Some(compound), Some(name)) = (write, node.ident_name()) {
                    if compound {
                        self.reference(scope, name, node.span, false);
                    }
                    self.reference(scope, name, node.span, true);
                }
            }
            NodeKind::DefaultValue => {
                if let [target, default] = node.children.as_slice() {
                    self.pattern(target, scope, write);
                    self.node(default, scope);
                }
            }
            NodeKind::Rest => {
                if let Some(target) = node.children.first() {
                    self.pattern(target, scope, write);
                }
            }
            NodeKind::ArrayPattern => {
                for element in &node.children {
                    self.pattern(element, scope, write);
                }
            }
            NodeKind::ObjectPattern => {
                for prop in &node.children {
                    let computed = prop.property_info().is_some_and(|p| p.computed);
                    if computed {
                        self.node(&prop.children[0], scope);
                    }
                    if let Some(value) = prop.children.last() {
                        self.pattern(value, scope, write);
                    }
                }
            }
            NodeKind::Member => {
                self.window_property(node, scope);
                self.node(node, scope);
            }
            _ => self.node(node, scope),
        }
    }

    /// `window.x = ...` and `globalThis.x = ...` create globals.
    fn window_property(&mut self, target: &AstNode, scope: usize) {
        let Some(object) = target.member_object() else { return };
        let Some(host) = object.ident_name() else { return };
        if !matches!(host, "window" | "globalThis") || self.resolve(scope, host).is_some() {
            return;
        }
        if let Some(name) = target.member_property() {
            self.global_entry(name).definition_sites.push(target.span);
        }
    }

    fn node(&mut self, node: &AstNode, scope: usize) {
        match node.kind {
            NodeKind::FunctionDecl | NodeKind::FunctionExpr | NodeKind::ArrowFunction => self.function(node, scope),
            NodeKind::ClassDecl | NodeKind::ClassExpr => self.class(node, scope),
            NodeKind::Block => self.block(node, scope),
            NodeKind::Identifier => {
                if let Some(name) = node.ident_name() {
                    self.reference(scope, name, node.span, false);
                }
            }
            NodeKind::VarDecl => {
                for declarator in &node.children {
                    if let Some(target) = declarator.children.first() {
                        self.pattern(target, scope, None);
                    }
                    if let Some(init) = declarator.children.get(1) {
                        self.node(init, scope);
                    }
                }
            }
            NodeKind::Assignment => {
                if let [target, value] = node.children.as_slice() {
                    self.pattern(target, scope, Some(node.op() != Some("=")));
                    self.node(value, scope);
                }
            }
            NodeKind::Update => {
                if let Some(arg) = node.children.first() {
                    self.pattern(arg, scope, Some(true));
                }
            }
            NodeKind::Member => {
                for child in &node.children {
                    self.node(child, scope);
                }
            }
            NodeKind::Property => {
                let computed = node.property_info().is_some_and(|p| p.computed);
                for (i, child) in node.children.iter().enumerate() {
                    if i + 1 == node.children.len() || computed {
                        self.node(child, scope);
                    }
                }
            }
            NodeKind::Loop => {
                let loop_scope = self.push_scope(ScopeKind::Block, Some(scope), node);
                if let Some(first) = node.children.first() {
                    if var_kind(first).is_some() {
                        self.declare_lexical(std::slice::from_ref(first), loop_scope);
                    }
                }
                let for_in = matches!(node.loop_kind(), Some(LoopKind::ForIn | LoopKind::ForOf));
                for (i, child) in node.children.iter().enumerate() {
                    if i == 0 && for_in && var_kind(child).is_none() {
                        self.pattern(child, loop_scope, Some(false));
                    } else {
                        self.node(child, loop_scope);
                    }
                }
            }
            NodeKind::SwitchStmt => {
                if let Some(disc) = node.children.first() {
                    self.node(disc, scope);
                }
                let switch_scope = self.push_scope(ScopeKind::Block, Some(scope), node);
                for case in &node.children[1.min(node.children.len())..] {
                    self.declare_lexical(case.statements(), switch_scope);
                }
                for case in node.children.iter().skip(1) {
                    for child in &case.children {
                        self.node(child, switch_scope);
                    }
                }
            }
            NodeKind::CatchClause => {
                let catch_scope = self.push_scope(ScopeKind::Catch, Some(scope), node);
                if node.children.len() == 2 {
                    let mut names = Vec::new();
                    pattern_names(&node.children[0], &mut names);
                    for (name, span) in names {
                        self.declare(catch_scope, name, DeclarationKind::CatchParam, span);
                    }
                    self.pattern(&node.children[0], catch_scope, None);
                }
                if let Some(body) = node.children.last() {
                    self.node(body, catch_scope);
                }
            }
            NodeKind::Export => {
                if let Attrs::Export(info) = &node.attrs {
                    if info.source.is_none() {
                        for (local, _) in &info.specifiers {
                            self.exports.insert(local.clone());
                            self.reference(scope, local, node.span, false);
                        }
                    }
                    if info.default {
                        self.exports.insert("default".to_string());
                    }
                }
                for child in &node.children {
                    self.node(child, scope);
                }
            }
            NodeKind::MethodDef => {
                for child in &node.children {
                    self.node(child, scope);
                }
            }
            _ => {
                for child in &node.children {
                    self.node(child, scope);
                }
            }
        }
    }
}

// ----- inheritance -----

/// Dotted path of an identifier/member expression (`a.b.c`), if static.
pub fn path_of(node: &AstNode) -> Option<String> {
    match node.kind {
        NodeKind::Identifier => node.ident_name().map(str::to_string),
        NodeKind::This => Some("this".to_string()),
        NodeKind::Member => {
            let object = path_of(node.member_object()?)?;
            Some(format!("{object}.{}", node.member_property()?))
        }
        _ => None,
    }
}

fn strip_prototype(path: &str) -> &str {
    path.strip_suffix(".prototype").unwrap_or(path)
}

fn looks_like_type(path: &str) -> bool {
    path.rsplit('.').next().and_then(|s| s.chars().next()).is_some_and(char::is_uppercase)
}

/// Parent named by `new Y()`, `Object.create(Y)` or `Object.create(Y.prototype)`.
fn parent_from_init(init: &AstNode) -> Option<String> {
    match init.kind {
        NodeKind::New => path_of(init.callee()?).map(|p| strip_prototype(&p).to_string()),
        NodeKind::Call => {
            let callee = path_of(init.callee()?)?;
            if callee != "Object.create" {
                return None;
            }
            let arg = init.arguments().first()?;
            path_of(arg).map(|p| strip_prototype(&p).to_string())
        }
        _ => None,
    }
}

fn is_object_create(init: &AstNode) -> bool {
    init.kind == NodeKind::Call && init.callee().and_then(path_of).as_deref() == Some("Object.create")
}

#[derive(Default)]
struct ShapeCollector {
    shapes: BTreeMap<String, TypeShape>,
}

impl ShapeCollector {
    fn shape(&mut self, name: &str, span: Span) -> &mut TypeShape {
        self.shapes.entry(name.to_string()).or_insert_with(|| TypeShape {
            name: name.to_string(),
            span,
            ..Default::default()
        })
    }

    /// Records `this.x` reads and writes inside a function owned by `owner`.
    fn this_usage(&mut self, func: &AstNode, owner: &str, constructor: bool) {
        let mut members = Vec::new();
        let mut used = Vec::new();
        collect_this(func, &mut members, &mut used, false);
        let span = func.span;
        let shape = self.shape(owner, span);
        for name in members {
            if constructor {
                shape.members.insert(name);
            } else {
                shape.used.insert(name);
            }
        }
        shape.used.extend(used);
    }

    fn object_members(&mut self, owner: &str, object: &AstNode) {
        for prop in &object.children {
            let Some(key) = prop.property_info().and_then(|p| p.key.clone()) else { continue };
            self.shape(owner, object.span).members.insert(key);
            if let Some(value) = prop.member_value().filter(|v| v.is_function()) {
                self.this_usage(value, owner, false);
            }
        }
    }

    fn class(&mut self, class: &AstNode, name: &str) {
        let parent = class.superclass().and_then(path_of);
        let shape = self.shape(name, class.span);
        shape.span = class.span;
        if parent.is_some() {
            shape.parent = parent;
        }
        for member in class.class_members() {
            let Some(info) = member.method_info() else { continue };
            let Some(func) = member.member_value() else { continue };
            if info.is_static {
                continue;
            }
            let constructor = info.kind == MethodKind::Constructor;
            if !constructor {
                if let Some(key) = &info.key {
                    self.shape(name, class.span).members.insert(key.clone());
                }
            }
            self.this_usage(func, name, constructor);
        }
    }

    /// A value bound to `target` (declarator name or assignment path).
    fn binding(&mut self, target: &str, value: &AstNode, span: Span) {
        if let Some(owner) = target.strip_suffix(".prototype") {
            if let Some(parent) = parent_from_init(value) {
                self.shape(owner, span).parent = Some(parent);
            } else if value.kind == NodeKind::ObjectLiteral {
                self.object_members(owner, value);
            }
            return;
        }
        if let Some((owner, member)) = target.split_once(".prototype.") {
            if !member.contains('.') {
                self.shape(owner, span).members.insert(member.to_string());
                if value.is_function() {
                    self.this_usage(value, owner, false);
                }
            }
            return;
        }
        match value.kind {
            NodeKind::ClassExpr => self.class(value, target),
            NodeKind::FunctionExpr if looks_like_type(target) => self.this_usage(value, target, true),
            NodeKind::ObjectLiteral => self.object_members(target, value),
            NodeKind::Call if is_object_create(value) => {
                if let Some(parent) = parent_from_init(value) {
                    self.shape(target, span).parent = Some(parent);
                }
            }
            _ => {
                if let Some((owner, member)) = target.rsplit_once('.') {
                    if let Some(shape) = self.shapes.get_mut(owner) {
                        shape.members.insert(member.to_string());
                        if value.is_function() {
                            self.this_usage(value, owner, false);
                        }
                    }
                }
            }
        }
    }

    fn visit(&mut self, node: &AstNode) {
        match node.kind {
            NodeKind::ClassDecl => {
                if let Some(name) = node.class_name() {
                    self.class(node, name);
                }
            }
            NodeKind::FunctionDecl => {
                if let Some(name) = node.function_info().and_then(|f| f.name.as_deref()) {
                    if looks_like_type(name) {
                        self.this_usage(node, name, true);
                    }
                }
            }
            NodeKind::Declarator => {
                if let (Some(name), Some(value)) = (node.children.first().and_then(AstNode::ident_name), node.children.get(1)) {
                    self.binding(name, value, node.span);
                }
            }
            NodeKind::Assignment if node.op() == Some("=") => {
                if let [target, value] = node.children.as_slice() {
                    if let Some(path) = path_of(target).filter(|p| !p.starts_with("this")) {
                        self.binding(&path, value, node.span);
                    }
                }
            }
            _ => {}
        }
        for child in &node.children {
            self.visit(child);
        }
    }
}

/// `this.x` assignment targets and reads, plus `super.x` reads, inside a
/// function body (arrow functions share `this`, other nested functions do not).
fn collect_this(node: &AstNode, members: &mut Vec<String>, used: &mut Vec<String>, nested: bool) {
    if nested && node.is_function() && node.kind != NodeKind::ArrowFunction {
        return;
    }
    if node.kind == NodeKind::Assignment {
        if let [target, value] = node.children.as_slice() {
            let this_target = target.member_object().is_some_and(|o| o.kind == NodeKind::This);
            if let (true, Some(prop)) = (this_target, target.member_property()) {
                members.push(prop.to_string());
                for child in &target.children[1..] {
                    collect_this(child, members, used, true);
                }
                collect_this(value, members, used, true);
                return;
            }
        }
    }
    if node.kind == NodeKind::Member {
        let on_this = node.member_object().is_some_and(|o| matches!(o.kind, NodeKind::This | NodeKind::Super));
        if let (true, Some(prop)) = (on_this, node.member_property()) {
            used.push(prop.to_string());
        }
    }
    for child in &node.children {
        collect_this(child, members, used, true);
    }
}

fn collect_shapes(program: &AstNode) -> BTreeMap<String, TypeShape> {
    let mut collector = ShapeCollector::default();
    collector.visit(program);
    for shape in collector.shapes.values_mut() {
        shape.members.remove("constructor");
    }
    collector.shapes
}

/// Resolves parent links among `shapes` (merged by name) into inheritance
/// edges. Inherited members include those of every resolvable ancestor.
pub fn resolve_inheritance(shapes: &[&TypeShape]) -> Vec<InheritanceEdge> {
    let mut merged: BTreeMap<&str, TypeShape> = BTreeMap::new();
    for shape in shapes {
        merged
            .entry(shape.name.as_str())
            .and_modify(|s| s.absorb(shape))
            .or_insert_with(|| (*shape).clone());
    }
    let mut edges = Vec::new();
    for shape in merged.values() {
        let Some(parent) = &shape.parent else { continue };
        let mut inherited = BTreeSet::new();
        let mut seen = BTreeSet::from([shape.name.as_str()]);
        let mut cursor = Some(parent.as_str());
        while let Some(name) = cursor {
            if !seen.insert(name) {
                break;
            }
            match merged.get(name) {
                Some(ancestor) => {
                    inherited.extend(ancestor.members.iter().cloned());
                    cursor = ancestor.parent.as_deref();
                }
                None => break,
            }
        }
        let overridden = shape.members.intersection(&inherited).cloned().collect();
        let used = shape.used.intersection(&inherited).cloned().collect();
        edges.push(InheritanceEdge {
            child: shape.name.clone(),
            parent: parent.clone(),
            inherited,
            overridden,
            used,
            span: shape.span,
        });
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_source, SourceKind};

    fn model(src: &str) -> ScopeModel {
        let unit = parse_source("a.js", src, SourceKind::Js);
        assert!(unit.diagnostics.is_empty(), "{:?}", unit.diagnostics);
        build_scopes(&unit)
    }

    fn defined(src: &str) -> Vec<String> {
        model(src).defined_global_names().into_iter().collect()
    }

    #[test]
    fn top_level_and_implicit_globals() {
        assert_eq!(defined("var a=1; function g(){ b=2; }"), ["a", "b", "g"]);
    }

    #[test]
    fn locals_stay_local() {
        let m = model("function g(){ var c=1; }");
        assert_eq!(m.defined_global_names().into_iter().collect::<Vec<_>>(), ["g"]);
        let inner = m.scopes.iter().find(|s| s.kind == ScopeKind::Function).unwrap();
        assert!(inner.lookup("c").is_some());
    }

    #[test]
    fn window_properties_and_modules() {
        assert_eq!(defined("window.game = {}; globalThis['cfg'] = 1;"), ["cfg", "game"]);
        assert!(defined("export var a = 1; function f(){}").is_empty());
        assert_eq!(defined("function f(window){ window.x = 1; }"), ["f"]);
    }

    #[test]
    fn let_const_and_block_scoping() {
        assert_eq!(defined("let a = 1; const b = 2; { var c; let d; }"), ["c"]);
        assert_eq!(defined("for (let i = 0; i < 3; i++) {} for (var j in o) {}"), ["j"]);
        assert_eq!(defined("try {} catch (e) { e = 1; }"), Vec::<String>::new());
        assert_eq!(defined("function f(a, {b, c: [d]}, ...e) { a = b = d = e = 1; }"), ["f"]);
    }

    #[test]
    fn reads_of_undeclared_names_are_undefined_globals() {
        let m = model("console.log(document.title); x++;");
        assert!(!m.global("console").unwrap().is_defined());
        assert_eq!(m.global("console").unwrap().reference_sites.len(), 1);
        assert!(m.global("x").unwrap().is_defined());
        for r in m.references() {
            if r.resolution == Resolution::Global {
                assert!(m.global(&r.name).is_some());
            }
        }
    }

    #[test]
    fn names_are_unique_per_scope() {
        let m = model("var a; var a; function a(){}");
        assert_eq!(m.scopes[0].declarations.len(), 1);
    }

    #[test]
    fn arguments_and_function_expression_names_resolve_locally() {
        let m = model("var f = function g(){ return arguments.length + g; };");
        assert_eq!(m.defined_global_names().into_iter().collect::<Vec<_>>(), ["f"]);
        assert!(m.global("arguments").is_none());
        assert!(m.global("g").is_none());
    }

    #[test]
    fn class_inheritance_edge() {
        let m = model("class A { f(){} g(){} } class B extends A { f(){} }");
        assert_eq!(m.inheritance.len(), 1);
        let e = &m.inheritance[0];
        assert_eq!((e.child.as_str(), e.parent.as_str()), ("B", "A"));
        assert_eq!(e.inherited, BTreeSet::from(["f".to_string(), "g".to_string()]));
        assert_eq!(e.overridden, BTreeSet::from(["f".to_string()]));
        assert!(e.used.is_empty());
    }

    #[test]
    fn prototype_inheritance_edges() {
        let src = "function A(){ this.x = 1; }\n\
                   A.prototype.m = function(){};\n\
                   function B(){ A.call(this); }\n\
                   B.prototype = Object.create(A.prototype);\n\
                   B.prototype.n = function(){ return this.x; };\n\
                   var base = { p: 1, q: 2 };\n\
                   var child = Object.create(base);\n\
                   function C(){}\n\
                   C.prototype = new A();";
        let m = model(src);
        let edges: BTreeMap<_, _> = m.inheritance.iter().map(|e| (e.child.as_str(), e)).collect();
        assert_eq!(edges["B"].parent, "A");
        assert_eq!(edges["B"].inherited, BTreeSet::from(["m".to_string(), "x".to_string()]));
        assert_eq!(edges["B"].used, BTreeSet::from(["x".to_string()]));
        assert_eq!(edges["child"].parent, "base");
        assert_eq!(edges["child"].inherited.len(), 2);
        assert_eq!(edges["C"].parent, "A");
    }

    #[test]
    fn super_reads_count_as_used() {
        let m = model("class A { a(){} b(){} c(){} } class B extends A { constructor(){ super(); this.a(); } d(){ super.b(); } }");
        let e = &m.inheritance[0];
        assert_eq!(e.used, BTreeSet::from(["a".to_string(), "b".to_string()]));
    }
}
