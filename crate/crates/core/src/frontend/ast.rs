//! Normalized syntax tree shared by every detector.
//!
//! Nodes are uniform (`kind`, `span`, ordered `children`, kind-specific
//! `attrs`) so generic walks stay trivial. Child layout per kind:
//!
//! | kind | children |
//! |------|----------|
//! | `FunctionDecl` / `FunctionExpr` / `ArrowFunction` | params..., body `Block` |
//! | `VarDecl` | `Declarator`... |
//! | `Declarator` | target pattern, optional init |
//! | `Property` | computed key expr (only if computed), value |
//! | `MethodDef` | computed key expr (only if computed), `FunctionExpr` |
//! | `ClassDecl` / `ClassExpr` | optional superclass expr, `MethodDef`... |
//! | `Member` | object, computed property expr (only if computed) |
//! | `Call` / `New` | callee, args... |
//! | `TryStmt` | `Block`, optional `CatchClause`, optional finalizer `Block` |
//! | `CatchClause` | optional param pattern, `Block` |
//! | `SwitchStmt` | discriminant, `SwitchCase`... |
//! | `SwitchCase` | test (absent for `default`), statements... |
//! | `Loop` (for) | init, test, update, body (absent parts are `Empty`) |
//! | `Loop` (for-in / for-of) | left, right, body |
//! | `Loop` (while) | test, body |
//! | `Loop` (do-while) | body, test |
//! | `If` | test, consequent, optional alternate |
//! | `TaggedTemplate` | tag, `TemplateLiteral` |

use serde::{Deserialize, Serialize};

/// A source range: byte offsets plus 1-based line and column positions.
///
/// Columns count characters, not bytes. `end` is exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Span {
    #[serde(skip)]
    pub start: usize,
    #[serde(skip)]
    pub end: usize,
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl Span {
    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Program,
    FunctionDecl,
    FunctionExpr,
    ArrowFunction,
    VarDecl,
    Declarator,
    ObjectLiteral,
    Property,
    ArrayLiteral,
    Call,
    New,
    Member,
    Identifier,
    Literal,
    TryStmt,
    CatchClause,
    SwitchStmt,
    SwitchCase,
    Loop,
    If,
    Return,
    Throw,
    Break,
    Continue,
    Assignment,
    Block,
    ClassDecl,
    ClassExpr,
    MethodDef,
    ExpressionStmt,
    TemplateLiteral,
    TaggedTemplate,
    This,
    Super,
    Binary,
    Logical,
    Unary,
    Update,
    Conditional,
    Sequence,
    Spread,
    Rest,
    ObjectPattern,
    ArrayPattern,
    DefaultValue,
    Hole,
    Empty,
    Labeled,
    Debugger,
    With,
    Yield,
    Import,
    Export,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeclKind {
    Var,
    Let,
    Const,
}

impl DeclKind {
    pub fn keyword(self) -> &'static str {
        match self {
            DeclKind::Var => "var",
            DeclKind::Let => "let",
            DeclKind::Const => "const",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LoopKind {
    For,
    ForIn,
    ForOf,
    While,
    DoWhile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropKind {
    Init,
    Shorthand,
    Method,
    Get,
    Set,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodKind {
    Constructor,
    Method,
    Get,
    Set,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LiteralValue {
    Number(f64),
    String(String),
    Bool(bool),
    Null,
    Regex { pattern: String, flags: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionInfo {
    pub name: Option<String>,
    pub param_count: usize,
    pub generator: bool,
    /// Arrow function whose body was a bare expression (wrapped in a synthetic block).
    pub expression_body: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyInfo {
    /// Static key text; `None` for computed keys that are not literals.
    pub key: Option<String>,
    pub computed: bool,
    pub kind: PropKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodInfo {
    pub key: Option<String>,
    pub computed: bool,
    pub kind: MethodKind,
    pub is_static: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImportInfo {
    pub source: String,
    /// (imported name, local name); `*` for namespace, `default` for default.
    pub bindings: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExportInfo {
    /// `export default <expr>`
    pub default: bool,
    /// (local name, exported name) for `export { a as b }`.
    pub specifiers: Vec<(String, String)>,
    pub source: Option<String>,
    /// `export * from "x"`
    pub all: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub enum Attrs {
    #[default]
    None,
    Function(FunctionInfo),
    Ident(String),
    Literal { value: LiteralValue, raw: String },
    Property(PropertyInfo),
    Member { computed: bool, property: Option<String> },
    Var(DeclKind),
    Loop(LoopKind),
    Op(String),
    Update { op: String, prefix: bool },
    Switch { case_count: usize },
    Case { is_default: bool },
    Class { name: Option<String>, has_super: bool },
    Method(MethodInfo),
    Template { quasis: Vec<String> },
    Label(Option<String>),
    Block { synthetic: bool },
    Yield { delegate: bool },
    Import(ImportInfo),
    Export(ExportInfo),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AstNode {
    pub kind: NodeKind,
    pub span: Span,
    pub children: Vec<AstNode>,
    pub attrs: Attrs,
}

impl AstNode {
    pub fn new(kind: NodeKind, span: Span, children: Vec<AstNode>, attrs: Attrs) -> Self {
        AstNode { kind, span, children, attrs }
    }

    pub fn is_function(&self) -> bool {
        matches!(
            self.kind,
            NodeKind::FunctionDecl | NodeKind::FunctionExpr | NodeKind::ArrowFunction
        )
    }

    pub fn is_class(&self) -> bool {
        matches!(self.kind, NodeKind::ClassDecl | NodeKind::ClassExpr)
    }

    pub fn function_info(&self) -> Option<&FunctionInfo> {
        match &self.attrs {
            Attrs::Function(info) => Some(info),
            _ => None,
        }
    }

    /// Parameter patterns of a function node.
    pub fn params(&self) -> &[AstNode] {
        match self.function_info() {
            Some(info) => &self.children[..info.param_count],
            None => &[],
        }
    }

    /// Body block of a function node.
    pub fn body(&self) -> Option<&AstNode> {
        if self.is_function() {
            self.children.last()
        } else {
            None
        }
    }

    pub fn ident_name(&self) -> Option<&str> {
        match &self.attrs {
            Attrs::Ident(name) if self.kind == NodeKind::Identifier => Some(name),
            _ => None,
        }
    }

    /// Non-computed member property name, or literal string key of a computed one.
    pub fn member_property(&self) -> Option<&str> {
        match &self.attrs {
            Attrs::Member { property, .. } => property.as_deref(),
            _ => None,
        }
    }

    pub fn member_object(&self) -> Option<&AstNode> {
        if self.kind == NodeKind::Member {
            self.children.first()
        } else {
            None
        }
    }

    pub fn is_computed_member(&self) -> bool {
        matches!(self.attrs, Attrs::Member { computed: true, .. })
    }

    pub fn callee(&self) -> Option<&AstNode> {
        match self.kind {
            NodeKind::Call | NodeKind::New => self.children.first(),
            _ => None,
        }
    }

    pub fn arguments(&self) -> &[AstNode] {
        match self.kind {
            NodeKind::Call | NodeKind::New => &self.children[1..],
            _ => &[],
        }
    }

    pub fn op(&self) -> Option<&str> {
        match &self.attrs {
            Attrs::Op(op) => Some(op),
            Attrs::Update { op, .. } => Some(op),
            _ => None,
        }
    }

    pub fn literal(&self) -> Option<&LiteralValue> {
        match &self.attrs {
            Attrs::Literal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn string_value(&self) -> Option<&str> {
        match self.literal() {
            Some(LiteralValue::String(s)) => Some(s),
            _ => None,
        }
    }

    pub fn loop_kind(&self) -> Option<LoopKind> {
        match self.attrs {
            Attrs::Loop(kind) => Some(kind),
            _ => None,
        }
    }

    /// Body statement of a loop node.
    pub fn loop_body(&self) -> Option<&AstNode> {
        match self.loop_kind()? {
            LoopKind::DoWhile => self.children.first(),
            _ => self.children.last(),
        }
    }

    pub fn property_info(&self) -> Option<&PropertyInfo> {
        match &self.attrs {
            Attrs::Property(info) => Some(info),
            _ => None,
        }
    }

    pub fn method_info(&self) -> Option<&MethodInfo> {
        match &self.attrs {
            Attrs::Method(info) => Some(info),
            _ => None,
        }
    }

    /// Value node of a `Property` or function node of a `MethodDef`.
    pub fn member_value(&self) -> Option<&AstNode> {
        match self.kind {
            NodeKind::Property | NodeKind::MethodDef => self.children.last(),
            _ => None,
        }
    }

    pub fn class_name(&self) -> Option<&str> {
        match &self.attrs {
            Attrs::Class { name, .. } => name.as_deref(),
            _ => None,
        }
    }

    pub fn superclass(&self) -> Option<&AstNode> {
        match &self.attrs {
            Attrs::Class { has_super: true, .. } => self.children.first(),
            _ => None,
        }
    }

    pub fn class_members(&self) -> impl Iterator<Item = &AstNode> {
        self.children.iter().filter(|c| c.kind == NodeKind::MethodDef)
    }

    /// Statement list of a block-like node (`Program`, `Block`, `SwitchCase`).
    pub fn statements(&self) -> &[AstNode] {
        match (&self.kind, &self.attrs) {
            (NodeKind::Program, _) => &self.children,
            (NodeKind::Block, Attrs::Block { synthetic: false }) => &self.children,
            (NodeKind::SwitchCase, Attrs::Case { is_default }) => {
                if *is_default {
                    &self.children
                } else {
                    &self.children[1.min(self.children.len())..]
                }
            }
            _ => &[],
        }
    }

    /// Pre-order traversal of this node and all descendants.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a AstNode)) {
        f(self);
        for child in &self.children {
            child.walk(f);
        }
    }

    /// Pre-order traversal that does not descend into nested functions
    /// (the nested function nodes themselves are still visited).
    pub fn walk_own<'a>(&'a self, f: &mut impl FnMut(&'a AstNode)) {
        for child in &self.children {
            f(child);
            if !child.is_function() {
                child.walk_own(f);
            }
        }
    }

    /// Number of nodes in this subtree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(AstNode::size).sum::<usize>()
    }
}

/// Structural equality ignoring spans: same kinds, attrs, and child shapes.
pub fn isomorphic(a: &AstNode, b: &AstNode) -> bool {
    a.kind == b.kind
        && attrs_equivalent(&a.attrs, &b.attrs)
        && a.children.len() == b.children.len()
        && a.children.iter().zip(&b.children).all(|(x, y)| isomorphic(x, y))
}

fn attrs_equivalent(a: &Attrs, b: &Attrs) -> bool {
    match (a, b) {
        // printed literals may be re-spelled (escapes, number forms); compare values
        (Attrs::Literal { value: va, .. }, Attrs::Literal { value: vb, .. }) => match (va, vb) {
            (LiteralValue::Number(x), LiteralValue::Number(y)) => {
                x == y || (x.is_nan() && y.is_nan())
            }
            _ => va == vb,
        },
        _ => a == b,
    }
}
