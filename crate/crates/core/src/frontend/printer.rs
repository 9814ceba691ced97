//! Unambiguous serialization of the normalized tree back to JavaScript.
//!
//! Every compound subexpression is parenthesized, so the output reparses to
//! an isomorphic tree regardless of operator precedence.

use super::ast::*;

pub fn print_program(program: &AstNode) -> String {
    let mut p = Printer { out: String::new(), indent: 0 };
    for stmt in &program.children {
        p.stmt(stmt);
    }
    p.out
}

struct Printer {
    out: String,
    indent: usize,
}

fn is_identifier_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c == '$' || c == '_' || c.is_alphabetic())
        && chars.all(|c| c == '$' || c == '_' || c.is_alphanumeric())
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\u{2028}' => out.push_str("\\u2028"),
            '\u{2029}' => out.push_str("\\u2029"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\x{:02x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl Printer {
    fn line(&mut self) {
        self.out.push('\n');
        for _ in 0..self.indent {
            self.out.push_str("  ");
        }
    }

    fn push(&mut self, s: &str) {
        self.out.push_str(s);
    }

    fn stmt(&mut self, node: &AstNode) {
        self.line();
        match node.kind {
            NodeKind::ExpressionStmt => {
                self.push("(");
                self.expr(&node.children[0]);
                self.push(");");
            }
            NodeKind::VarDecl => {
                self.var_decl(node);
                self.push(";");
            }
            NodeKind::FunctionDecl => self.function(node),
            NodeKind::ClassDecl => self.class(node),
            NodeKind::Block => self.block(node),
            NodeKind::Empty => self.push(";"),
            NodeKind::If => {
                self.push("if (");
                self.expr(&node.children[0]);
                self.push(")");
                self.nested_stmt(&node.children[1]);
                if let Some(alt) = node.children.get(2) {
                    self.line();
                    self.push("else");
                    self.nested_stmt(alt);
                }
            }
            NodeKind::Loop => self.loop_stmt(node),
            NodeKind::Return => {
                self.push("return");
                if let Some(arg) = node.children.first() {
                    self.push(" ");
                    self.wrapped(arg);
                }
                self.push(";");
            }
            NodeKind::Throw => {
                self.push("throw ");
                self.wrapped(&node.children[0]);
                self.push(";");
            }
            NodeKind::Break | NodeKind::Continue => {
                self.push(if node.kind == NodeKind::Break { "break" } else { "continue" });
                if let Attrs::Label(Some(label)) = &node.attrs {
                    self.push(" ");
                    self.push(label);
                }
                self.push(";");
            }
            NodeKind::TryStmt => {
                self.push("try ");
                self.block(&node.children[0]);
                for part in &node.children[1..] {
                    if part.kind == NodeKind::CatchClause {
                        self.push(" catch ");
                        let (param, body) = match part.children.len() {
                            2 => (Some(&part.children[0]), &part.children[1]),
                            _ => (None, &part.children[0]),
                        };
                        if let Some(param) = param {
                            self.push("(");
                            self.pattern(param);
                            self.push(") ");
                        }
                        self.block(body);
                    } else {
                        self.push(" finally ");
                        self.block(part);
                    }
                }
            }
            NodeKind::SwitchStmt => {
                self.push("switch (");
                self.expr(&node.children[0]);
                self.push(") {");
                self.indent += 1;
                for case in &node.children[1..] {
                    self.line();
                    let is_default = matches!(case.attrs, Attrs::Case { is_default: true });
                    if is_default {
                        self.push("default:");
                    } else {
                        self.push("case ");
                        self.wrapped(&case.children[0]);
                        self.push(":");
                    }
                    self.indent += 1;
                    for s in case.statements() {
                        self.stmt(s);
                    }
                    self.indent -= 1;
                }
                self.indent -= 1;
                self.line();
                self.push("}");
            }
            NodeKind::Labeled => {
                if let Attrs::Label(Some(label)) = &node.attrs {
                    self.push(label);
                }
                self.push(":");
                self.nested_stmt(&node.children[0]);
            }
            NodeKind::Debugger => self.push("debugger;"),
            NodeKind::With => {
                self.push("with (");
                self.expr(&node.children[0]);
                self.push(")");
                self.nested_stmt(&node.children[1]);
            }
            NodeKind::Import => self.import(node),
            NodeKind::Export => self.export(node),
            _ => {
                // not a statement kind; print as an expression statement
                self.push("(");
                self.expr(node);
                self.push(");");
            }
        }
    }

    fn nested_stmt(&mut self, node: &AstNode) {
        self.indent += 1;
        self.stmt(node);
        self.indent -= 1;
    }

    fn block(&mut self, node: &AstNode) {
        self.push("{");
        self.indent += 1;
        for s in &node.children {
            self.stmt(s);
        }
        self.indent -= 1;
        self.line();
        self.push("}");
    }

    fn var_decl(&mut self, node: &AstNode) {
        if let Attrs::Var(kind) = node.attrs {
            self.push(kind.keyword());
            self.push(" ");
        }
        for (i, decl) in node.children.iter().enumerate() {
            if i > 0 {
                self.push(", ");
            }
            self.pattern(&decl.children[0]);
            if let Some(init) = decl.children.get(1) {
                self.push(" = ");
                self.wrapped(init);
            }
        }
    }

    fn loop_stmt(&mut self, node: &AstNode) {
        let kind = node.loop_kind().expect("loop kind");
        match kind {
            LoopKind::For => {
                self.push("for (");
                let init = &node.children[0];
                match init.kind {
                    NodeKind::Empty => {}
                    NodeKind::VarDecl => self.var_decl(init),
                    _ => self.wrapped(init),
                }
                self.push("; ");
                if node.children[1].kind != NodeKind::Empty {
                    self.expr(&node.children[1]);
                }
                self.push("; ");
                if node.children[2].kind != NodeKind::Empty {
                    self.expr(&node.children[2]);
                }
                self.push(")");
                self.nested_stmt(&node.children[3]);
            }
            LoopKind::ForIn | LoopKind::ForOf => {
                self.push("for (");
                let left = &node.children[0];
                if left.kind == NodeKind::VarDecl {
                    self.var_decl(left);
                } else {
                    self.pattern(left);
                }
                self.push(if kind == LoopKind::ForIn { " in " } else { " of " });
                self.wrapped(&node.children[1]);
                self.push(")");
                self.nested_stmt(&node.children[2]);
            }
            LoopKind::While => {
                self.push("while (");
                self.expr(&node.children[0]);
                self.push(")");
                self.nested_stmt(&node.children[1]);
            }
            LoopKind::DoWhile => {
                self.push("do");
                self.nested_stmt(&node.children[0]);
                self.line();
                self.push("while (");
                self.expr(&node.children[1]);
                self.push(");");
            }
        }
    }

    fn import(&mut self, node: &AstNode) {
        let Attrs::Import(info) = &node.attrs else { return };
        self.push("import ");
        if !info.bindings.is_empty() {
            let mut parts = Vec::new();
            let mut named = Vec::new();
            for (imported, local) in &info.bindings {
                match imported.as_str() {
                    "default" => parts.push(local.clone()),
                    "*" => parts.push(format!("* as {local}")),
                    _ => named.push(format!("{imported} as {local}")),
                }
            }
            if !named.is_empty() {
                parts.push(format!("{{{}}}", named.join(", ")));
            }
            self.push(&parts.join(", "));
            self.push(" from ");
        }
        self.push(&quote(&info.source));
        self.push(";");
    }

    fn export(&mut self, node: &AstNode) {
        let Attrs::Export(info) = &node.attrs else { return };
        self.push("export ");
        if info.default {
            self.push("default ");
            let child = &node.children[0];
            match child.kind {
                NodeKind::FunctionDecl => self.function(child),
                NodeKind::ClassDecl => self.class(child),
                _ => {
                    self.wrapped(child);
                    self.push(";");
                }
            }
        } else if info.all {
            self.push("* from ");
            self.push(&quote(info.source.as_deref().unwrap_or_default()));
            self.push(";");
        } else if let Some(decl) = node.children.first() {
            match decl.kind {
                NodeKind::VarDecl => {
                    self.var_decl(decl);
                    self.push(";");
                }
                NodeKind::FunctionDecl => self.function(decl),
                _ => self.class(decl),
            }
        } else {
            let specs: Vec<String> =
                info.specifiers.iter().map(|(local, exported)| format!("{local} as {exported}")).collect();
            self.push(&format!("{{{}}}", specs.join(", ")));
            if let Some(source) = &info.source {
                self.push(" from ");
                self.push(&quote(source));
            }
            self.push(";");
        }
    }

    fn params_and_body(&mut self, node: &AstNode) {
        self.push("(");
        for (i, param) in node.params().iter().enumerate() {
            if i > 0 {
                self.push(", ");
            }
            self.pattern(param);
        }
        self.push(") ");
        self.block(node.body().expect("function body"));
    }

    fn function(&mut self, node: &AstNode) {
        let info = node.function_info().expect("function info");
        if node.kind == NodeKind::ArrowFunction {
            self.push("(");
            for (i, param) in node.params().iter().enumerate() {
                if i > 0 {
                    self.push(", ");
                }
                self.pattern(param);
            }
            self.push(") => ");
            let body = node.body().expect("arrow body");
            if info.expression_body {
                let expr = &body.children[0];
                if expr.kind == NodeKind::ObjectLiteral {
                    self.push("(");
                    self.expr(expr);
                    self.push(")");
                } else {
                    self.wrapped(expr);
                }
            } else {
                self.block(body);
            }
            return;
        }
        self.push("function");
        if info.generator {
            self.push("*");
        }
        if let Some(name) = &info.name {
            self.push(" ");
            self.push(name);
        }
        self.params_and_body(node);
    }

    fn property_key(&mut self, key: Option<&str>, computed: bool, children: &[AstNode]) {
        if computed {
            self.push("[");
            self.expr(&children[0]);
            self.push("]");
        } else {
            let key = key.unwrap_or_default();
            if is_identifier_name(key) {
                self.push(key);
            } else {
                self.push(&quote(key));
            }
        }
    }

    fn class(&mut self, node: &AstNode) {
        self.push("class");
        if let Some(name) = node.class_name() {
            self.push(" ");
            self.push(name);
        }
        if let Some(sup) = node.superclass() {
            self.push(" extends ");
            self.wrapped(sup);
        }
        self.push(" {");
        self.indent += 1;
        for member in node.class_members() {
            let info = member.method_info().expect("method info");
            self.line();
            if info.is_static {
                self.push("static ");
            }
            match info.kind {
                MethodKind::Get => self.push("get "),
                MethodKind::Set => self.push("set "),
                _ => {}
            }
            let func = member.member_value().expect("method function");
            if func.function_info().is_some_and(|f| f.generator) {
                self.push("*");
            }
            self.property_key(info.key.as_deref(), info.computed, &member.children);
            self.params_and_body(func);
        }
        self.indent -= 1;
        self.line();
        self.push("}");
    }

    fn is_atomic(node: &AstNode) -> bool {
        matches!(
            node.kind,
            NodeKind::Identifier
                | NodeKind::This
                | NodeKind::Super
                | NodeKind::ArrayLiteral
                | NodeKind::ObjectLiteral
                | NodeKind::TemplateLiteral
        ) || (node.kind == NodeKind::Literal && !matches!(node.literal(), Some(LiteralValue::Number(_))))
    }

    /// Expression in a position where it must be parenthesized unless atomic.
    fn wrapped(&mut self, node: &AstNode) {
        if Self::is_atomic(node) {
            self.expr(node);
        } else {
            self.push("(");
            self.expr(node);
            self.push(")");
        }
    }

    fn pattern(&mut self, node: &AstNode) {
        match node.kind {
            NodeKind::Identifier => self.push(node.ident_name().unwrap_or_default()),
            NodeKind::Member => self.expr(node),
            NodeKind::DefaultValue => {
                self.pattern(&node.children[0]);
                self.push(" = ");
                self.wrapped(&node.children[1]);
            }
            NodeKind::Rest => {
                self.push("...");
                self.pattern(&node.children[0]);
            }
            NodeKind::ArrayPattern => {
                self.push("[");
                self.elements(&node.children, true);
                self.push("]");
            }
            NodeKind::ObjectPattern => {
                self.push("{");
                for (i, prop) in node.children.iter().enumerate() {
                    if i > 0 {
                        self.push(", ");
                    }
                    let info = prop.property_info().expect("property info");
                    let value = prop.member_value().expect("property value");
                    if info.kind == PropKind::Shorthand {
                        self.pattern(value);
                    } else {
                        self.property_key(info.key.as_deref(), info.computed, &prop.children);
                        self.push(": ");
                        self.pattern(value);
                    }
                }
                self.push("}");
            }
            NodeKind::Hole => {}
            _ => self.expr(node),
        }
    }

    fn elements(&mut self, elements: &[AstNode], as_pattern: bool) {
        for (i, el) in elements.iter().enumerate() {
            if i > 0 {
                self.push(", ");
            }
            match el.kind {
                NodeKind::Hole => {}
                NodeKind::Spread => {
                    self.push("...");
                    self.wrapped(&el.children[0]);
                }
                _ if as_pattern => self.pattern(el),
                _ => self.wrapped(el),
            }
        }
        if elements.last().is_some_and(|el| el.kind == NodeKind::Hole) {
            self.push(",");
        }
    }

    fn expr(&mut self, node: &AstNode) {
        match node.kind {
            NodeKind::Identifier => self.push(node.ident_name().unwrap_or_default()),
            NodeKind::This => self.push("this"),
            NodeKind::Super => self.push("super"),
            NodeKind::Literal => {
                if let Attrs::Literal { value, raw } = &node.attrs {
                    match value {
                        LiteralValue::String(s) => self.push(&quote(s)),
                        _ => self.push(raw),
                    }
                }
            }
            NodeKind::TemplateLiteral => {
                let Attrs::Template { quasis } = &node.attrs else { return };
                self.push("`");
                for (i, q) in quasis.iter().enumerate() {
                    self.push(q);
                    if let Some(e) = node.children.get(i) {
                        self.push("${");
                        self.expr(e);
                        self.push("}");
                    }
                }
                self.push("`");
            }
            NodeKind::TaggedTemplate => {
                self.wrapped(&node.children[0]);
                self.expr(&node.children[1]);
            }
            NodeKind::ArrayLiteral => {
                self.push("[");
                self.elements(&node.children, false);
                self.push("]");
            }
            NodeKind::ObjectLiteral => {
                self.push("{");
                for (i, prop) in node.children.iter().enumerate() {
                    if i > 0 {
                        self.push(", ");
                    }
                    self.object_property(prop);
                }
                self.push("}");
            }
            NodeKind::FunctionExpr | NodeKind::ArrowFunction | NodeKind::FunctionDecl => self.function(node),
            NodeKind::ClassExpr | NodeKind::ClassDecl => self.class(node),
            NodeKind::Member => {
                self.wrapped(&node.children[0]);
                if node.is_computed_member() {
                    self.push("[");
                    self.expr(&node.children[1]);
                    self.push("]");
                } else {
                    self.push(".");
                    self.push(node.member_property().unwrap_or_default());
                }
            }
            NodeKind::Call | NodeKind::New => {
                if node.kind == NodeKind::New {
                    self.push("new ");
                }
                self.wrapped(&node.children[0]);
                self.push("(");
                self.elements(&node.children[1..], false);
                self.push(")");
            }
            NodeKind::Assignment => {
                self.pattern(&node.children[0]);
                self.push(" ");
                self.push(node.op().unwrap_or("="));
                self.push(" ");
                self.wrapped(&node.children[1]);
            }
            NodeKind::Binary | NodeKind::Logical => {
                self.wrapped(&node.children[0]);
                self.push(" ");
                self.push(node.op().unwrap_or_default());
                self.push(" ");
                self.wrapped(&node.children[1]);
            }
            NodeKind::Unary => {
                let op = node.op().unwrap_or_default();
                self.push(op);
                if op.chars().all(char::is_alphabetic) {
                    self.push(" ");
                }
                self.wrapped(&node.children[0]);
            }
            NodeKind::Update => {
                let Attrs::Update { op, prefix } = &node.attrs else { return };
                if *prefix {
                    self.push(op);
                    self.wrapped(&node.children[0]);
                } else {
                    self.wrapped(&node.children[0]);
                    self.push(op);
                }
            }
            NodeKind::Conditional => {
                self.wrapped(&node.children[0]);
                self.push(" ? ");
                self.wrapped(&node.children[1]);
                self.push(" : ");
                self.wrapped(&node.children[2]);
            }
            NodeKind::Sequence => {
                for (i, e) in node.children.iter().enumerate() {
                    if i > 0 {
                        self.push(", ");
                    }
                    self.wrapped(e);
                }
            }
            NodeKind::Yield => {
                self.push("yield");
                if matches!(node.attrs, Attrs::Yield { delegate: true }) {
                    self.push("*");
                }
                if let Some(arg) = node.children.first() {
                    self.push(" ");
                    self.wrapped(arg);
                }
            }
            NodeKind::Spread => {
                self.push("...");
                self.wrapped(&node.children[0]);
            }
            NodeKind::ObjectPattern | NodeKind::ArrayPattern | NodeKind::DefaultValue | NodeKind::Rest => {
                self.pattern(node)
            }
            _ => {}
        }
    }

    fn object_property(&mut self, prop: &AstNode) {
        let info = prop.property_info().expect("property info");
        let value = prop.member_value().expect("property value");
        match info.kind {
            PropKind::Shorthand => self.pattern(value),
            PropKind::Init => {
                self.property_key(info.key.as_deref(), info.computed, &prop.children);
                self.push(": ");
                self.wrapped(value);
            }
            PropKind::Method | PropKind::Get | PropKind::Set => {
                match info.kind {
                    PropKind::Get => self.push("get "),
                    PropKind::Set => self.push("set "),
                    _ => {}
                }
                if value.function_info().is_some_and(|f| f.generator) {
                    self.push("*");
                }
                self.property_key(info.key.as_deref(), info.computed, &prop.children);
                self.params_and_body(value);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::lines::LineIndex;
    use crate::frontend::parser::parse_program;

    fn roundtrip(src: &str) {
        let lines = LineIndex::new(src);
        let first = parse_program(src, &lines).unwrap().program;
        let printed = print_program(&first);
        let lines2 = LineIndex::new(&printed);
        let second = parse_program(&printed, &lines2)
            .unwrap_or_else(|e| panic!("reparse failed: {e:?}\n{printed}"))
            .program;
        assert!(isomorphic(&first, &second), "not isomorphic:\n{src}\n---\n{printed}");
    }

    #[test]
    fn roundtrips_common_constructs() {
        roundtrip("var a = 1, b; function f(x, y = 2, ...z) { return x + y * 2; }");
        roundtrip("if (a) if (b) c(); else d(); else e();");
        roundtrip("for (var i = 0; i < n; i++) { continue; } for (k in o) ; for (const v of xs) break;");
        roundtrip("var o = { a: 1, 'b c': 2, 3: x, [k]: v, m() {}, get g() { return 1 }, set s(v) {} , sh };");
        roundtrip("class A extends B { constructor() { super(); } static m() {} }");
        roundtrip("x = a ? b : c, y = -(-z), delete o.p, typeof t; i++; --j;");
        roundtrip("var f = (a, {b}, [c, , d]) => ({a}); var g = () => { return 1; };");
        roundtrip("label: for (;;) { break label; } do x(); while (y); switch (a) { case 1: b(); default: }");
        roundtrip("try { f(); } catch (e) {} finally { g(); } throw new Error('x');");
        roundtrip("var t = `a${b}c`; var r = /x\\/y/gi; new Foo; new (a.b())(); (1).toString();");
        roundtrip("[a, b] = [b, a]; ({a, b: {c}} = o); var arr = [1, , 3, ];");
        roundtrip("function* gen() { yield 1; yield* other(); }");
    }
}
