//! Recursive-descent parser for ES5 plus the ES2015 surface the detectors
//! rely on: `let`/`const`, arrow functions, classes, template literals,
//! default/rest parameters, destructuring, spread, generators, `for-of`, and
//! static `import`/`export`.
//!
//! Arrow parameters use a cover grammar: a parenthesized expression is parsed
//! normally and reinterpreted as a parameter list when `=>` follows. The
//! parser stops at the first error; there is no recovery.

use super::ast::*;
use super::lexer::{LexError, Lexer, TokKind, Token};
use super::lines::LineIndex;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub message: String,
    pub pos: usize,
}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError { message: e.message, pos: e.pos }
    }
}

type PResult<T> = Result<T, ParseError>;

#[derive(Debug, Clone)]
pub struct ParseOutput {
    pub program: AstNode,
    /// Byte ranges of every significant token, in source order.
    pub tokens: Vec<(usize, usize)>,
    pub comments: Vec<(usize, usize)>,
    /// The source used `import`/`export` declarations.
    pub is_module: bool,
}

const MAX_DEPTH: usize = 160;

const RESERVED: &[&str] = &[
    "break", "case", "catch", "class", "const", "continue", "debugger", "default", "delete", "do",
    "else", "enum", "export", "extends", "false", "finally", "for", "function", "if", "import",
    "in", "instanceof", "new", "null", "return", "super", "switch", "this", "throw", "true", "try",
    "typeof", "var", "void", "while", "with",
];

const ASSIGN_OPS: &[&str] =
    &["=", "+=", "-=", "*=", "/=", "%=", "<<=", ">>=", ">>>=", "&=", "|=", "^=", "**="];

fn is_reserved(name: &str) -> bool {
    RESERVED.contains(&name)
}

fn binary_precedence(tok: &Token, no_in: bool) -> Option<(u8, &'static str)> {
    let op: &'static str = match &tok.kind {
        TokKind::Punct(p) => p,
        TokKind::Ident(name) if name == "instanceof" => "instanceof",
        TokKind::Ident(name) if name == "in" && !no_in => "in",
        _ => return None,
    };
    let prec = match op {
        "||" => 1,
        "&&" => 2,
        "|" => 3,
        "^" => 4,
        "&" => 5,
        "==" | "!=" | "===" | "!==" => 6,
        "<" | ">" | "<=" | ">=" | "instanceof" | "in" => 7,
        "<<" | ">>" | ">>>" => 8,
        "+" | "-" => 9,
        "*" | "/" | "%" => 10,
        "**" => 11,
        _ => return None,
    };
    Some((prec, op))
}

pub fn format_number_key(value: f64) -> String {
    if value.fract() == 0.0 && value.abs() < 1e21 {
        format!("{}", value as i64)
    } else {
        format!("{value}")
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Parse as a function body (`return` allowed at top level), as for
    /// HTML event-handler attributes.
    pub function_body: bool,
}

pub fn parse_program(src: &str, lines: &LineIndex) -> PResult<ParseOutput> {
    parse_program_with(src, lines, ParseOptions::default())
}

/// Stack for the parser thread; deep expression nesting recurses through
/// every precedence level.
const PARSER_STACK: usize = 64 << 20;

pub fn parse_program_with(src: &str, lines: &LineIndex, options: ParseOptions) -> PResult<ParseOutput> {
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(PARSER_STACK)
            .spawn_scoped(scope, || parse_on_current_thread(src, lines, options))
            .expect("failed to spawn parser thread")
            .join()
            .unwrap_or_else(|panic| std::panic::resume_unwind(panic))
    })
}

fn parse_on_current_thread(src: &str, lines: &LineIndex, options: ParseOptions) -> PResult<ParseOutput> {
    let mut parser = Parser::new(src, lines)?;
    parser.in_function = options.function_body;
    let program = parser.parse_program()?;
    Ok(ParseOutput {
        program,
        tokens: parser.tokens,
        comments: parser.lexer.comments,
        is_module: parser.is_module,
    })
}

struct Parser<'a> {
    src: &'a str,
    lines: &'a LineIndex,
    lexer: Lexer<'a>,
    cur: Token,
    prev_end: usize,
    tokens: Vec<(usize, usize)>,
    depth: usize,
    in_function: bool,
    in_generator: bool,
    is_module: bool,
    /// (start, end) of the last parenthesized group, used to recognise arrow parameters.
    paren_group: Option<(usize, usize)>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, lines: &'a LineIndex) -> PResult<Self> {
        let mut lexer = Lexer::new(src);
        let cur = lexer.next_token()?;
        Ok(Parser {
            src,
            lines,
            lexer,
            cur,
            prev_end: 0,
            tokens: Vec::new(),
            depth: 0,
            in_function: false,
            in_generator: false,
            is_module: false,
            paren_group: None,
        })
    }

    // ----- token plumbing -----

    fn bump(&mut self) -> PResult<Token> {
        let next = self.lexer.next_token()?;
        let tok = std::mem::replace(&mut self.cur, next);
        self.tokens.push((tok.start, tok.end));
        self.prev_end = tok.end;
        Ok(tok)
    }

    fn peek(&self) -> PResult<Token> {
        Ok(self.lexer.fork().next_token()?)
    }

    fn is(&self, p: &str) -> bool {
        self.cur.is_punct(p)
    }

    fn is_kw(&self, kw: &str) -> bool {
        self.cur.is_ident(kw)
    }

    fn eat(&mut self, p: &str) -> PResult<bool> {
        if self.is(p) {
            self.bump()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn expect(&mut self, p: &str) -> PResult<Token> {
        if self.is(p) {
            self.bump()
        } else {
            self.unexpected(&format!("expected '{p}'"))
        }
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<Token> {
        if self.is_kw(kw) {
            self.bump()
        } else {
            self.unexpected(&format!("expected '{kw}'"))
        }
    }

    fn unexpected<T>(&self, context: &str) -> PResult<T> {
        let found = match &self.cur.kind {
            TokKind::Eof => "end of input".to_string(),
            _ => format!("'{}'", &self.src[self.cur.start..self.cur.end]),
        };
        Err(ParseError { message: format!("{context}, found {found}"), pos: self.cur.start })
    }

    fn error<T>(&self, message: &str, pos: usize) -> PResult<T> {
        Err(ParseError { message: message.to_string(), pos })
    }

    fn consume_semicolon(&mut self) -> PResult<()> {
        if self.is(";") {
            self.bump()?;
            Ok(())
        } else if self.is("}") || self.cur.kind == TokKind::Eof || self.cur.nl_before {
            Ok(())
        } else {
            self.unexpected("expected ';'")
        }
    }

    fn span_from(&self, start: usize) -> Span {
        let end = self.prev_end.max(start);
        self.lines.span(self.src, start, end)
    }

    fn node(&self, kind: NodeKind, start: usize, children: Vec<AstNode>, attrs: Attrs) -> AstNode {
        AstNode::new(kind, self.span_from(start), children, attrs)
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.error("nesting too deep", self.cur.start);
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn binding_name(&mut self) -> PResult<(String, usize)> {
        match &self.cur.kind {
            TokKind::Ident(name) if !is_reserved(name) => {
                let name = name.clone();
                let start = self.cur.start;
                self.bump()?;
                Ok((name, start))
            }
            _ => self.unexpected("expected identifier"),
        }
    }

    /// Any IdentifierName, including reserved words (after `.` or as a property key).
    fn identifier_name(&mut self) -> PResult<String> {
        match &self.cur.kind {
            TokKind::Ident(name) => {
                let name = name.clone();
                self.bump()?;
                Ok(name)
            }
            _ => self.unexpected("expected property name"),
        }
    }

    // ----- program and statements -----

    fn parse_program(&mut self) -> PResult<AstNode> {
        let mut body = Vec::new();
        while self.cur.kind != TokKind::Eof {
            body.push(self.parse_module_item()?);
        }
        let span = self.lines.span(self.src, 0, self.src.len());
        Ok(AstNode::new(NodeKind::Program, span, body, Attrs::None))
    }

    fn parse_module_item(&mut self) -> PResult<AstNode> {
        if self.is_kw("import") {
            let next = self.peek()?;
            if next.is_punct("(") {
                return self.error("dynamic import() is not supported", self.cur.start);
            }
            if !next.is_punct(".") {
                return self.parse_import();
            }
        }
        if self.is_kw("export") {
            return self.parse_export();
        }
        self.parse_statement_list_item()
    }

    fn parse_statement_list_item(&mut self) -> PResult<AstNode> {
        if self.is_kw("function") {
            return self.parse_function(true);
        }
        if self.is_kw("class") {
            return self.parse_class(true);
        }
        if self.is_kw("const") || (self.is_kw("let") && self.let_starts_declaration()?) {
            let node = self.parse_var_decl(false)?;
            self.consume_semicolon()?;
            return Ok(self.with_end(node));
        }
        if self.is_kw("import") || self.is_kw("export") {
            if self.is_kw("import") && self.peek()?.is_punct("(") {
                return self.error("dynamic import() is not supported", self.cur.start);
            }
            return self.error("import/export is only allowed at top level", self.cur.start);
        }
        self.parse_statement()
    }

    /// Re-extends a node's span to the last consumed token (picks up a trailing `;`).
    fn with_end(&self, mut node: AstNode) -> AstNode {
        node.span = self.span_from(node.span.start);
        node
    }

    fn let_starts_declaration(&self) -> PResult<bool> {
        let next = self.peek()?;
        Ok(next.is_punct("[")
            || next.is_punct("{")
            || matches!(&next.kind, TokKind::Ident(n) if !is_reserved(n) || n == "yield"))
    }

    fn parse_statement(&mut self) -> PResult<AstNode> {
        self.enter()?;
        let result = self.parse_statement_inner();
        self.leave();
        result
    }

    fn parse_statement_inner(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        if self.is("{") {
            return self.parse_block();
        }
        if self.is(";") {
            self.bump()?;
            return Ok(self.node(NodeKind::Empty, start, vec![], Attrs::None));
        }
        if self.is("@") {
            return self.error("decorators are not supported", start);
        }
        let keyword = match &self.cur.kind {
            TokKind::Ident(name) => Some(name.clone()),
            _ => None,
        };
        match keyword.as_deref() {
            Some("var") => {
                let node = self.parse_var_decl(false)?;
                self.consume_semicolon()?;
                Ok(self.with_end(node))
            }
            Some("if") => self.parse_if(),
            Some("for") => self.parse_for(),
            Some("while") => {
                self.bump()?;
                self.expect("(")?;
                let test = self.parse_expression(false)?;
                self.expect(")")?;
                let body = self.parse_statement()?;
                Ok(self.node(NodeKind::Loop, start, vec![test, body], Attrs::Loop(LoopKind::While)))
            }
            Some("do") => {
                self.bump()?;
                let body = self.parse_statement()?;
                self.expect_kw("while")?;
                self.expect("(")?;
                let test = self.parse_expression(false)?;
                self.expect(")")?;
                self.eat(";")?;
                Ok(self.node(NodeKind::Loop, start, vec![body, test], Attrs::Loop(LoopKind::DoWhile)))
            }
            Some("continue") | Some("break") => {
                self.bump()?;
                let label = match &self.cur.kind {
                    TokKind::Ident(name) if !self.cur.nl_before && !is_reserved(name) => {
                        let name = name.clone();
                        self.bump()?;
                        Some(name)
                    }
                    _ => None,
                };
                self.consume_semicolon()?;
                let kind = if keyword.as_deref() == Some("break") {
                    NodeKind::Break
                } else {
                    NodeKind::Continue
                };
                Ok(self.node(kind, start, vec![], Attrs::Label(label)))
            }
            Some("return") => {
                if !self.in_function {
                    return self.error("'return' outside of function", start);
                }
                self.bump()?;
                let mut children = Vec::new();
                if !(self.is(";") || self.is("}") || self.cur.kind == TokKind::Eof || self.cur.nl_before) {
                    children.push(self.parse_expression(false)?);
                }
                self.consume_semicolon()?;
                Ok(self.node(NodeKind::Return, start, children, Attrs::None))
            }
            Some("throw") => {
                self.bump()?;
                if self.cur.nl_before {
                    return self.error("illegal newline after throw", self.cur.start);
                }
                let arg = self.parse_expression(false)?;
                self.consume_semicolon()?;
                Ok(self.node(NodeKind::Throw, start, vec![arg], Attrs::None))
            }
            Some("try") => self.parse_try(),
            Some("switch") => self.parse_switch(),
            Some("with") => {
                self.bump()?;
                self.expect("(")?;
                let object = self.parse_expression(false)?;
                self.expect(")")?;
                let body = self.parse_statement()?;
                Ok(self.node(NodeKind::With, start, vec![object, body], Attrs::None))
            }
            Some("debugger") => {
                self.bump()?;
                self.consume_semicolon()?;
                Ok(self.node(NodeKind::Debugger, start, vec![], Attrs::None))
            }
            Some("function") => self.parse_function(true),
            Some("class") => self.parse_class(true),
            Some("const") => {
                let node = self.parse_var_decl(false)?;
                self.consume_semicolon()?;
                Ok(self.with_end(node))
            }
            Some("let") if self.let_starts_declaration()? => {
                let node = self.parse_var_decl(false)?;
                self.consume_semicolon()?;
                Ok(self.with_end(node))
            }
            Some(name) if !is_reserved(name) && self.peek()?.is_punct(":") => {
                let label = name.to_string();
                self.bump()?;
                self.bump()?;
                let body = if self.is_kw("function") {
                    self.parse_function(true)?
                } else {
                    self.parse_statement()?
                };
                Ok(self.node(NodeKind::Labeled, start, vec![body], Attrs::Label(Some(label))))
            }
            _ => {
                let expr = self.parse_expression(false)?;
                self.consume_semicolon()?;
                Ok(self.node(NodeKind::ExpressionStmt, start, vec![expr], Attrs::None))
            }
        }
    }

    fn parse_block(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        self.expect("{")?;
        let mut body = Vec::new();
        while !self.is("}") {
            if self.cur.kind == TokKind::Eof {
                return self.unexpected("expected '}'");
            }
            body.push(self.parse_statement_list_item()?);
        }
        self.bump()?;
        Ok(self.node(NodeKind::Block, start, body, Attrs::Block { synthetic: false }))
    }

    fn parse_var_decl(&mut self, no_in: bool) -> PResult<AstNode> {
        let start = self.cur.start;
        let kind = match self.cur.ident() {
            Some("var") => DeclKind::Var,
            Some("let") => DeclKind::Let,
            Some("const") => DeclKind::Const,
            _ => return self.unexpected("expected declaration"),
        };
        self.bump()?;
        let mut declarators = Vec::new();
        loop {
            let dstart = self.cur.start;
            let target = self.parse_binding_target()?;
            let mut children = vec![target];
            if self.eat("=")? {
                children.push(self.parse_assign(no_in)?);
            }
            declarators.push(self.node(NodeKind::Declarator, dstart, children, Attrs::None));
            if !self.eat(",")? {
                break;
            }
        }
        Ok(self.node(NodeKind::VarDecl, start, declarators, Attrs::Var(kind)))
    }

    fn parse_if(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        self.bump()?;
        self.expect("(")?;
        let test = self.parse_expression(false)?;
        self.expect(")")?;
        let consequent = self.parse_statement()?;
        let mut children = vec![test, consequent];
        if self.is_kw("else") {
            self.bump()?;
            children.push(self.parse_statement()?);
        }
        Ok(self.node(NodeKind::If, start, children, Attrs::None))
    }

    fn empty_at(&self, pos: usize) -> AstNode {
        AstNode::new(NodeKind::Empty, self.lines.span(self.src, pos, pos), vec![], Attrs::None)
    }

    fn parse_for(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        self.bump()?;
        self.expect("(")?;
        let init = if self.is(";") {
            None
        } else if self.is_kw("var")
            || self.is_kw("const")
            || (self.is_kw("let") && self.let_starts_declaration()?)
        {
            Some(self.parse_var_decl(true)?)
        } else {
            let expr = self.parse_expression(true)?;
            if self.is_kw("in") || self.is_kw("of") {
                Some(self.to_pattern(expr)?)
            } else {
                Some(expr)
            }
        };
        if let Some(left) = init.as_ref() {
            let loop_kind = if self.is_kw("in") {
                Some(LoopKind::ForIn)
            } else if self.is_kw("of") {
                Some(LoopKind::ForOf)
            } else {
                None
            };
            if let Some(loop_kind) = loop_kind {
                if left.kind == NodeKind::VarDecl && left.children.len() != 1 {
                    return self.error("invalid left-hand side in for-in/of", left.span.start);
                }
                self.bump()?;
                let right = if loop_kind == LoopKind::ForOf {
                    self.parse_assign(false)?
                } else {
                    self.parse_expression(false)?
                };
                self.expect(")")?;
                let body = self.parse_statement()?;
                let left = init.expect("checked above");
                return Ok(self.node(NodeKind::Loop, start, vec![left, right, body], Attrs::Loop(loop_kind)));
            }
        }
        let init = init.unwrap_or_else(|| self.empty_at(self.cur.start));
        self.expect(";")?;
        let test = if self.is(";") { self.empty_at(self.cur.start) } else { self.parse_expression(false)? };
        self.expect(";")?;
        let update = if self.is(")") { self.empty_at(self.cur.start) } else { self.parse_expression(false)? };
        self.expect(")")?;
        let body = self.parse_statement()?;
        Ok(self.node(NodeKind::Loop, start, vec![init, test, update, body], Attrs::Loop(LoopKind::For)))
    }

    fn parse_try(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        self.bump()?;
        let block = self.parse_block()?;
        let mut children = vec![block];
        if self.is_kw("catch") {
            let cstart = self.cur.start;
            self.bump()?;
            let mut cchildren = Vec::new();
            if self.eat("(")? {
                cchildren.push(self.parse_binding_target()?);
                self.expect(")")?;
            }
            cchildren.push(self.parse_block()?);
            children.push(self.node(NodeKind::CatchClause, cstart, cchildren, Attrs::None));
        }
        if self.is_kw("finally") {
            self.bump()?;
            children.push(self.parse_block()?);
        }
        if children.len() == 1 {
            return self.unexpected("expected 'catch' or 'finally'");
        }
        Ok(self.node(NodeKind::TryStmt, start, children, Attrs::None))
    }

    fn parse_switch(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        self.bump()?;
        self.expect("(")?;
        let discriminant = self.parse_expression(false)?;
        self.expect(")")?;
        self.expect("{")?;
        let mut children = vec![discriminant];
        let mut case_count = 0;
        let mut seen_default = false;
        while !self.is("}") {
            let cstart = self.cur.start;
            let mut cchildren = Vec::new();
            let is_default = if self.is_kw("case") {
                self.bump()?;
                cchildren.push(self.parse_expression(false)?);
                case_count += 1;
                false
            } else if self.is_kw("default") {
                if seen_default {
                    return self.error("duplicate default clause", cstart);
                }
                seen_default = true;
                self.bump()?;
                true
            } else {
                return self.unexpected("expected 'case' or 'default'");
            };
            self.expect(":")?;
            while !(self.is("}") || self.is_kw("case") || self.is_kw("default")) {
                if self.cur.kind == TokKind::Eof {
                    return self.unexpected("expected '}'");
                }
                cchildren.push(self.parse_statement_list_item()?);
            }
            children.push(self.node(NodeKind::SwitchCase, cstart, cchildren, Attrs::Case { is_default }));
        }
        self.bump()?;
        Ok(self.node(NodeKind::SwitchStmt, start, children, Attrs::Switch { case_count }))
    }

    fn parse_import(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        self.is_module = true;
        self.bump()?;
        let mut bindings = Vec::new();
        let source = if let TokKind::Str(s) = &self.cur.kind {
            let s = s.clone();
            self.bump()?;
            s
        } else {
            if let Some(name) = self.cur.ident().filter(|n| !is_reserved(n)).map(str::to_string) {
                self.bump()?;
                bindings.push(("default".to_string(), name));
                if !self.eat(",")? {
                    return self.finish_import(start, bindings);
                }
            }
            if self.eat("*")? {
                self.expect_kw("as")?;
                let (local, _) = self.binding_name()?;
                bindings.push(("*".to_string(), local));
            } else if self.eat("{")? {
                while !self.is("}") {
                    let imported = self.identifier_name()?;
                    let local = if self.is_kw("as") {
                        self.bump()?;
                        self.binding_name()?.0
                    } else {
                        imported.clone()
                    };
                    bindings.push((imported, local));
                    if !self.eat(",")? {
                        break;
                    }
                }
                self.expect("}")?;
            } else {
                return self.unexpected("expected import clause");
            }
            return self.finish_import(start, bindings);
        };
        self.consume_semicolon()?;
        Ok(self.node(NodeKind::Import, start, vec![], Attrs::Import(ImportInfo { source, bindings })))
    }

    fn finish_import(&mut self, start: usize, bindings: Vec<(String, String)>) -> PResult<AstNode> {
        self.expect_kw("from")?;
        let source = match &self.cur.kind {
            TokKind::Str(s) => s.clone(),
            _ => return self.unexpected("expected module specifier"),
        };
        self.bump()?;
        self.consume_semicolon()?;
        Ok(self.node(NodeKind::Import, start, vec![], Attrs::Import(ImportInfo { source, bindings })))
    }

    fn parse_export(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        self.is_module = true;
        self.bump()?;
        let mut info = ExportInfo { default: false, specifiers: Vec::new(), source: None, all: false };
        let mut children = Vec::new();
        if self.is_kw("default") {
            self.bump()?;
            info.default = true;
            if self.is_kw("function") {
                let is_named = {
                    let next = self.peek()?;
                    next.ident().is_some() || next.is_punct("*")
                };
                children.push(self.parse_function(is_named)?);
            } else if self.is_kw("class") {
                let is_named = self.peek()?.ident().is_some_and(|n| n != "extends");
                children.push(self.parse_class(is_named)?);
            } else {
                children.push(self.parse_assign(false)?);
                self.consume_semicolon()?;
            }
        } else if self.eat("*")? {
            info.all = true;
            self.expect_kw("from")?;
            info.source = self.module_specifier()?;
            self.consume_semicolon()?;
        } else if self.eat("{")? {
            while !self.is("}") {
                let local = self.identifier_name()?;
                let exported = if self.is_kw("as") {
                    self.bump()?;
                    self.identifier_name()?
                } else {
                    local.clone()
                };
                info.specifiers.push((local, exported));
                if !self.eat(",")? {
                    break;
                }
            }
            self.expect("}")?;
            if self.is_kw("from") {
                self.bump()?;
                info.source = self.module_specifier()?;
            }
            self.consume_semicolon()?;
        } else if self.is_kw("var") || self.is_kw("let") || self.is_kw("const") {
            let decl = self.parse_var_decl(false)?;
            self.consume_semicolon()?;
            children.push(self.with_end(decl));
        } else if self.is_kw("function") {
            children.push(self.parse_function(true)?);
        } else if self.is_kw("class") {
            children.push(self.parse_class(true)?);
        } else {
            return self.unexpected("expected export clause");
        }
        Ok(self.node(NodeKind::Export, start, children, Attrs::Export(info)))
    }

    fn module_specifier(&mut self) -> PResult<Option<String>> {
        match &self.cur.kind {
            TokKind::Str(s) => {
                let s = s.clone();
                self.bump()?;
                Ok(Some(s))
            }
            _ => self.unexpected("expected module specifier"),
        }
    }

    // ----- functions and classes -----

    /// `function` keyword at `self.cur`. Declarations require a name.
    fn parse_function(&mut self, is_decl: bool) -> PResult<AstNode> {
        let start = self.cur.start;
        self.expect_kw("function")?;
        let generator = self.eat("*")?;
        let name = if self.cur.ident().is_some_and(|n| !is_reserved(n)) && !self.is("(") {
            Some(self.binding_name()?.0)
        } else if is_decl {
            return self.unexpected("expected function name");
        } else {
            None
        };
        let (mut children, param_count) = self.parse_function_rest(generator)?;
        let kind = if is_decl { NodeKind::FunctionDecl } else { NodeKind::FunctionExpr };
        let info = FunctionInfo { name, param_count, generator, expression_body: false };
        let body = children.pop().expect("function body");
        children.push(body);
        Ok(self.node(kind, start, children, Attrs::Function(info)))
    }

    /// Parameters and body; returns children (params..., body) and the parameter count.
    fn parse_function_rest(&mut self, generator: bool) -> PResult<(Vec<AstNode>, usize)> {
        let saved = (self.in_function, self.in_generator);
        self.in_function = true;
        self.in_generator = generator;
        let result = (|| {
            let mut children = self.parse_params()?;
            let count = children.len();
            children.push(self.parse_block()?);
            Ok((children, count))
        })();
        (self.in_function, self.in_generator) = saved;
        result
    }

    fn parse_params(&mut self) -> PResult<Vec<AstNode>> {
        self.expect("(")?;
        let mut params = Vec::new();
        while !self.is(")") {
            if self.is("...") {
                let start = self.cur.start;
                self.bump()?;
                let target = self.parse_binding_target()?;
                params.push(self.node(NodeKind::Rest, start, vec![target], Attrs::None));
                if !self.is(")") {
                    return self.unexpected("rest parameter must be last");
                }
                break;
            }
            params.push(self.parse_binding_element()?);
            if !self.eat(",")? {
                break;
            }
        }
        self.expect(")")?;
        Ok(params)
    }

    fn parse_class(&mut self, is_decl: bool) -> PResult<AstNode> {
        let start = self.cur.start;
        self.expect_kw("class")?;
        let name = if self.cur.ident().is_some_and(|n| !is_reserved(n) && n != "extends") {
            Some(self.binding_name()?.0)
        } else if is_decl {
            return self.unexpected("expected class name");
        } else {
            None
        };
        let mut children = Vec::new();
        let has_super = if self.is_kw("extends") {
            self.bump()?;
            children.push(self.parse_lhs_expression()?);
            true
        } else {
            false
        };
        self.expect("{")?;
        while !self.is("}") {
            if self.eat(";")? {
                continue;
            }
            children.push(self.parse_class_member()?);
        }
        self.bump()?;
        let kind = if is_decl { NodeKind::ClassDecl } else { NodeKind::ClassExpr };
        Ok(self.node(kind, start, children, Attrs::Class { name, has_super }))
    }

    fn parse_class_member(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        let mut is_static = false;
        if self.is_kw("static") && !self.peek()?.is_punct("(") {
            self.bump()?;
            is_static = true;
        }
        let mut kind = MethodKind::Method;
        if (self.is_kw("get") || self.is_kw("set")) && self.next_is_property_key()? {
            kind = if self.is_kw("get") { MethodKind::Get } else { MethodKind::Set };
            self.bump()?;
        }
        let generator = self.eat("*")?;
        let (key, key_node) = self.parse_property_key()?;
        if !is_static && kind == MethodKind::Method && key.as_deref() == Some("constructor") && key_node.is_none() {
            kind = MethodKind::Constructor;
        }
        if !self.is("(") {
            return self.unexpected("class fields are not supported; expected '('");
        }
        let func = self.parse_method_function(start, generator)?;
        let mut children = Vec::new();
        let computed = key_node.is_some();
        children.extend(key_node);
        children.push(func);
        Ok(self.node(
            NodeKind::MethodDef,
            start,
            children,
            Attrs::Method(MethodInfo { key, computed, kind, is_static }),
        ))
    }

    fn parse_method_function(&mut self, start: usize, generator: bool) -> PResult<AstNode> {
        let (children, param_count) = self.parse_function_rest(generator)?;
        let info = FunctionInfo { name: None, param_count, generator, expression_body: false };
        Ok(self.node(NodeKind::FunctionExpr, start, children, Attrs::Function(info)))
    }

    fn next_is_property_key(&self) -> PResult<bool> {
        let next = self.peek()?;
        Ok(matches!(next.kind, TokKind::Ident(_) | TokKind::Str(_) | TokKind::Num(_))
            || next.is_punct("[")
            || next.is_punct("*"))
    }

    /// Returns the static key text (if any) and the computed key expression (if computed).
    fn parse_property_key(&mut self) -> PResult<(Option<String>, Option<AstNode>)> {
        match &self.cur.kind {
            TokKind::Ident(name) => {
                let name = name.clone();
                self.bump()?;
                Ok((Some(name), None))
            }
            TokKind::Str(s) => {
                let s = s.clone();
                self.bump()?;
                Ok((Some(s), None))
            }
            TokKind::Num(n) => {
                let key = format_number_key(*n);
                self.bump()?;
                Ok((Some(key), None))
            }
            TokKind::Punct("[") => {
                self.bump()?;
                let expr = self.parse_assign(false)?;
                self.expect("]")?;
                let key = expr.string_value().map(str::to_string);
                Ok((key, Some(expr)))
            }
            TokKind::Punct("#") => self.error("private class members are not supported", self.cur.start),
            _ => self.unexpected("expected property name"),
        }
    }

    // ----- binding patterns -----

    fn parse_binding_target(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        if self.is("[") {
            self.bump()?;
            let mut elements = Vec::new();
            while !self.is("]") {
                if self.is(",") {
                    let pos = self.cur.start;
                    self.bump()?;
                    elements.push(AstNode::new(NodeKind::Hole, self.lines.span(self.src, pos, pos), vec![], Attrs::None));
                    continue;
                }
                if self.is("...") {
                    let rstart = self.cur.start;
                    self.bump()?;
                    let target = self.parse_binding_target()?;
                    elements.push(self.node(NodeKind::Rest, rstart, vec![target], Attrs::None));
                    break;
                }
                elements.push(self.parse_binding_element()?);
                if !self.is("]") {
                    self.expect(",")?;
                }
            }
            self.expect("]")?;
            return Ok(self.node(NodeKind::ArrayPattern, start, elements, Attrs::None));
        }
        if self.is("{") {
            self.bump()?;
            let mut props = Vec::new();
            while !self.is("}") {
                let pstart = self.cur.start;
                let shorthand_name = self.cur.ident().filter(|n| !is_reserved(n)).map(str::to_string);
                let (key, key_node) = self.parse_property_key()?;
                let computed = key_node.is_some();
                let mut children: Vec<AstNode> = key_node.into_iter().collect();
                let kind = if self.eat(":")? {
                    children.push(self.parse_binding_element()?);
                    PropKind::Init
                } else {
                    let name = match shorthand_name {
                        Some(n) if !computed => n,
                        _ => return self.unexpected("expected ':'"),
                    };
                    let ident = self.node(NodeKind::Identifier, pstart, vec![], Attrs::Ident(name));
                    if self.eat("=")? {
                        let default = self.parse_assign(false)?;
                        children.push(self.node(NodeKind::DefaultValue, pstart, vec![ident, default], Attrs::None));
                    } else {
                        children.push(ident);
                    }
                    PropKind::Shorthand
                };
                props.push(self.node(NodeKind::Property, pstart, children, Attrs::Property(PropertyInfo { key, computed, kind })));
                if !self.eat(",")? {
                    break;
                }
            }
            self.expect("}")?;
            return Ok(self.node(NodeKind::ObjectPattern, start, props, Attrs::None));
        }
        let (name, start) = self.binding_name()?;
        Ok(self.node(NodeKind::Identifier, start, vec![], Attrs::Ident(name)))
    }

    fn parse_binding_element(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        let target = self.parse_binding_target()?;
        if self.eat("=")? {
            let default = self.parse_assign(false)?;
            return Ok(self.node(NodeKind::DefaultValue, start, vec![target, default], Attrs::None));
        }
        Ok(target)
    }

    /// Reinterprets an expression as an assignment/binding pattern.
    fn to_pattern(&self, node: AstNode) -> PResult<AstNode> {
        match node.kind {
            NodeKind::Identifier | NodeKind::Member | NodeKind::ObjectPattern | NodeKind::ArrayPattern | NodeKind::Hole => Ok(node),
            NodeKind::ObjectLiteral => {
                let mut props = Vec::with_capacity(node.children.len());
                for mut prop in node.children {
                    match prop.property_info().map(|p| p.kind) {
                        Some(PropKind::Init) | Some(PropKind::Shorthand) => {
                            let value = prop.children.pop().expect("property value");
                            prop.children.push(self.to_pattern(value)?);
                            props.push(prop);
                        }
                        _ => return self.error("invalid destructuring target", prop.span.start),
                    }
                }
                Ok(AstNode::new(NodeKind::ObjectPattern, node.span, props, Attrs::None))
            }
            NodeKind::ArrayLiteral => {
                let mut elements = Vec::with_capacity(node.children.len());
                for element in node.children {
                    elements.push(self.to_pattern(element)?);
                }
                Ok(AstNode::new(NodeKind::ArrayPattern, node.span, elements, Attrs::None))
            }
            NodeKind::Assignment if node.op() == Some("=") => {
                let mut children = node.children.into_iter();
                let target = self.to_pattern(children.next().expect("target"))?;
                let value = children.next().expect("value");
                Ok(AstNode::new(NodeKind::DefaultValue, node.span, vec![target, value], Attrs::None))
            }
            NodeKind::DefaultValue => Ok(node),
            NodeKind::Spread => {
                let span = node.span;
                let inner = self.to_pattern(node.children.into_iter().next().expect("spread arg"))?;
                Ok(AstNode::new(NodeKind::Rest, span, vec![inner], Attrs::None))
            }
            NodeKind::Rest => Ok(node),
            _ => self.error("invalid assignment target", node.span.start),
        }
    }

    fn to_param(&self, node: AstNode) -> PResult<AstNode> {
        let pattern = self.to_pattern(node)?;
        let ok = match pattern.kind {
            NodeKind::Member => false,
            NodeKind::DefaultValue => pattern.children[0].kind != NodeKind::Member,
            _ => true,
        };
        if ok {
            Ok(pattern)
        } else {
            self.error("invalid parameter", pattern.span.start)
        }
    }

    // ----- expressions -----

    fn parse_expression(&mut self, no_in: bool) -> PResult<AstNode> {
        let start = self.cur.start;
        let first = self.parse_assign(no_in)?;
        if !self.is(",") {
            return Ok(first);
        }
        let mut exprs = vec![first];
        while self.eat(",")? {
            exprs.push(self.parse_assign(no_in)?);
        }
        Ok(self.node(NodeKind::Sequence, start, exprs, Attrs::None))
    }

    fn parse_assign(&mut self, no_in: bool) -> PResult<AstNode> {
        self.enter()?;
        let result = self.parse_assign_inner(no_in);
        self.leave();
        result
    }

    fn parse_assign_inner(&mut self, no_in: bool) -> PResult<AstNode> {
        let start = self.cur.start;
        if self.in_generator && self.is_kw("yield") {
            return self.parse_yield(no_in);
        }
        // `x => ...`
        if let TokKind::Ident(name) = &self.cur.kind {
            if !is_reserved(name) {
                let next = self.peek()?;
                if next.is_punct("=>") && !next.nl_before {
                    let (name, nstart) = self.binding_name()?;
                    let param = self.node(NodeKind::Identifier, nstart, vec![], Attrs::Ident(name));
                    return self.parse_arrow_body(start, vec![param]);
                }
                if name == "async" && matches!(next.kind, TokKind::Ident(_)) && !next.nl_before {
                    return self.error("async functions are not supported", start);
                }
            }
        }
        let starts_with_paren = self.is("(");
        let lhs = self.parse_conditional(no_in)?;
        if self.is("=>") {
            let is_group = starts_with_paren && self.paren_group == Some((start, self.prev_end));
            if !is_group || self.cur.nl_before {
                return self.unexpected("unexpected arrow");
            }
            let params = match lhs.kind {
                NodeKind::Empty => Vec::new(),
                NodeKind::Sequence => lhs.children,
                _ => vec![lhs],
            };
            let params = params.into_iter().map(|p| self.to_param(p)).collect::<PResult<Vec<_>>>()?;
            return self.parse_arrow_body(start, params);
        }
        if matches!(lhs.kind, NodeKind::Empty | NodeKind::Rest) || matches!(lhs.attrs, Attrs::Label(None)) {
            return self.error("expected '=>' after parameter list", self.cur.start);
        }
        if let TokKind::Punct(op) = self.cur.kind {
            if ASSIGN_OPS.contains(&op) {
                let target = if op == "=" {
                    self.to_pattern(lhs)?
                } else if matches!(lhs.kind, NodeKind::Identifier | NodeKind::Member) {
                    lhs
                } else {
                    return self.error("invalid assignment target", lhs.span.start);
                };
                if matches!(target.kind, NodeKind::DefaultValue | NodeKind::Rest | NodeKind::Hole) {
                    return self.error("invalid assignment target", target.span.start);
                }
                self.bump()?;
                let value = self.parse_assign(no_in)?;
                return Ok(self.node(NodeKind::Assignment, start, vec![target, value], Attrs::Op(op.to_string())));
            }
        }
        Ok(lhs)
    }

    fn parse_yield(&mut self, no_in: bool) -> PResult<AstNode> {
        let start = self.cur.start;
        self.bump()?;
        let delegate = !self.cur.nl_before && self.eat("*")?;
        let mut children = Vec::new();
        let ends = self.cur.nl_before && !delegate
            || matches!(self.cur.kind, TokKind::Eof)
            || [")", "]", "}", ",", ";", ":"].iter().any(|p| self.is(p))
            || (no_in && self.is_kw("in"));
        if !ends {
            children.push(self.parse_assign(no_in)?);
        }
        Ok(self.node(NodeKind::Yield, start, children, Attrs::Yield { delegate }))
    }

    fn parse_arrow_body(&mut self, start: usize, params: Vec<AstNode>) -> PResult<AstNode> {
        self.expect("=>")?;
        let param_count = params.len();
        let mut children = params;
        let saved = (self.in_function, self.in_generator);
        self.in_function = true;
        self.in_generator = false;
        let body = if self.is("{") {
            self.parse_block().map(|b| (b, false))
        } else {
            self.parse_assign(false).map(|expr| {
                let span = expr.span;
                (AstNode::new(NodeKind::Block, span, vec![expr], Attrs::Block { synthetic: true }), true)
            })
        };
        (self.in_function, self.in_generator) = saved;
        let (body, expression_body) = body?;
        children.push(body);
        let info = FunctionInfo { name: None, param_count, generator: false, expression_body };
        Ok(self.node(NodeKind::ArrowFunction, start, children, Attrs::Function(info)))
    }

    fn parse_conditional(&mut self, no_in: bool) -> PResult<AstNode> {
        let start = self.cur.start;
        let test = self.parse_binary(0, no_in)?;
        if !self.is("?") {
            return Ok(test);
        }
        self.bump()?;
        let consequent = self.parse_assign(false)?;
        self.expect(":")?;
        let alternate = self.parse_assign(no_in)?;
        Ok(self.node(NodeKind::Conditional, start, vec![test, consequent, alternate], Attrs::None))
    }

    fn parse_binary(&mut self, min_prec: u8, no_in: bool) -> PResult<AstNode> {
        let start = self.cur.start;
        let mut left = self.parse_unary()?;
        while let Some((prec, op)) = binary_precedence(&self.cur, no_in) {
            if prec <= min_prec {
                break;
            }
            self.bump()?;
            // `**` is right-associative
            let next_min = if op == "**" { prec - 1 } else { prec };
            let right = self.parse_binary(next_min, no_in)?;
            let kind = if op == "||" || op == "&&" { NodeKind::Logical } else { NodeKind::Binary };
            left = self.node(kind, start, vec![left, right], Attrs::Op(op.to_string()));
        }
        Ok(left)
    }

    fn parse_unary(&mut self) -> PResult<AstNode> {
        self.enter()?;
        let result = self.parse_unary_inner();
        self.leave();
        result
    }

    fn parse_unary_inner(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        let unary_op = match &self.cur.kind {
            TokKind::Punct(p @ ("!" | "~" | "+" | "-")) => Some(p.to_string()),
            TokKind::Ident(name) if matches!(name.as_str(), "typeof" | "void" | "delete") => Some(name.clone()),
            _ => None,
        };
        if let Some(op) = unary_op {
            self.bump()?;
            let arg = self.parse_unary()?;
            return Ok(self.node(NodeKind::Unary, start, vec![arg], Attrs::Op(op)));
        }
        if self.is("++") || self.is("--") {
            let op = if self.is("++") { "++" } else { "--" };
            self.bump()?;
            let arg = self.parse_unary()?;
            if !matches!(arg.kind, NodeKind::Identifier | NodeKind::Member) {
                return self.error("invalid update target", arg.span.start);
            }
            return Ok(self.node(NodeKind::Update, start, vec![arg], Attrs::Update { op: op.into(), prefix: true }));
        }
        let expr = self.parse_call_member()?;
        if (self.is("++") || self.is("--")) && !self.cur.nl_before {
            if !matches!(expr.kind, NodeKind::Identifier | NodeKind::Member) {
                return self.error("invalid update target", expr.span.start);
            }
            let op = if self.is("++") { "++" } else { "--" };
            self.bump()?;
            return Ok(self.node(NodeKind::Update, start, vec![expr], Attrs::Update { op: op.into(), prefix: false }));
        }
        Ok(expr)
    }

    fn parse_arguments(&mut self) -> PResult<Vec<AstNode>> {
        self.expect("(")?;
        let mut args = Vec::new();
        while !self.is(")") {
            if self.is("...") {
                let start = self.cur.start;
                self.bump()?;
                let arg = self.parse_assign(false)?;
                args.push(self.node(NodeKind::Spread, start, vec![arg], Attrs::None));
            } else {
                args.push(self.parse_assign(false)?);
            }
            if !self.eat(",")? {
                break;
            }
        }
        self.expect(")")?;
        Ok(args)
    }

    /// Member/call/tagged-template suffixes after `expr`.
    fn parse_suffixes(&mut self, start: usize, mut expr: AstNode, allow_call: bool) -> PResult<AstNode> {
        loop {
            if self.is(".") {
                self.bump()?;
                if self.is("#") {
                    return self.error("private class members are not supported", self.cur.start);
                }
                let name = self.identifier_name()?;
                expr = self.node(NodeKind::Member, start, vec![expr], Attrs::Member { computed: false, property: Some(name) });
            } else if self.is("[") {
                self.bump()?;
                let prop = self.parse_expression(false)?;
                self.expect("]")?;
                let property = match prop.literal() {
                    Some(LiteralValue::String(s)) => Some(s.clone()),
                    Some(LiteralValue::Number(n)) => Some(format_number_key(*n)),
                    _ => None,
                };
                expr = self.node(NodeKind::Member, start, vec![expr, prop], Attrs::Member { computed: true, property });
            } else if allow_call && self.is("(") {
                let mut children = vec![expr];
                children.extend(self.parse_arguments()?);
                expr = self.node(NodeKind::Call, start, children, Attrs::None);
            } else if matches!(self.cur.kind, TokKind::Template { .. }) {
                let template = self.parse_template()?;
                expr = self.node(NodeKind::TaggedTemplate, start, vec![expr, template], Attrs::None);
            } else {
                return Ok(expr);
            }
        }
    }

    fn parse_call_member(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        let base = if self.is_kw("new") { self.parse_new()? } else { self.parse_primary()? };
        self.parse_suffixes(start, base, true)
    }

    fn parse_lhs_expression(&mut self) -> PResult<AstNode> {
        self.parse_call_member()
    }

    fn parse_new(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        self.bump()?;
        if self.is(".") {
            return self.error("new.target is not supported", start);
        }
        let callee_start = self.cur.start;
        let callee = if self.is_kw("new") { self.parse_new()? } else { self.parse_primary()? };
        let callee = self.parse_suffixes(callee_start, callee, false)?;
        let mut children = vec![callee];
        if self.is("(") {
            children.extend(self.parse_arguments()?);
        }
        Ok(self.node(NodeKind::New, start, children, Attrs::None))
    }

    fn parse_template(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        let mut quasis = Vec::new();
        let mut exprs = Vec::new();
        loop {
            let (raw, tail) = match &self.cur.kind {
                TokKind::Template { raw, tail } => (raw.clone(), *tail),
                _ => return self.unexpected("expected template continuation"),
            };
            quasis.push(raw);
            self.bump()?;
            if tail {
                break;
            }
            exprs.push(self.parse_expression(false)?);
            if !self.is("}") {
                return self.unexpected("expected '}' in template literal");
            }
            let brace = self.cur.clone();
            self.cur = self.lexer.rescan_template_continuation(brace.start, brace.nl_before)?;
        }
        Ok(self.node(NodeKind::TemplateLiteral, start, exprs, Attrs::Template { quasis }))
    }

    fn parse_primary(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        match self.cur.kind.clone() {
            TokKind::Ident(name) => match name.as_str() {
                "this" => {
                    self.bump()?;
                    Ok(self.node(NodeKind::This, start, vec![], Attrs::None))
                }
                "super" => {
                    self.bump()?;
                    Ok(self.node(NodeKind::Super, start, vec![], Attrs::None))
                }
                "null" | "true" | "false" => {
                    self.bump()?;
                    let value = match name.as_str() {
                        "null" => LiteralValue::Null,
                        "true" => LiteralValue::Bool(true),
                        _ => LiteralValue::Bool(false),
                    };
                    Ok(self.node(NodeKind::Literal, start, vec![], Attrs::Literal { value, raw: name }))
                }
                "function" => self.parse_function(false),
                "class" => self.parse_class(false),
                "new" => self.parse_new(),
                "import" => self.error("dynamic import() is not supported", start),
                "async" if self.peek()?.is_ident("function") => {
                    self.error("async functions are not supported", start)
                }
                n if is_reserved(n) => self.unexpected("unexpected keyword"),
                _ => {
                    self.bump()?;
                    Ok(self.node(NodeKind::Identifier, start, vec![], Attrs::Ident(name)))
                }
            },
            TokKind::Num(n) => {
                let tok = self.bump()?;
                let raw = self.src[tok.start..tok.end].to_string();
                Ok(self.node(NodeKind::Literal, start, vec![], Attrs::Literal { value: LiteralValue::Number(n), raw }))
            }
            TokKind::Str(s) => {
                let tok = self.bump()?;
                let raw = self.src[tok.start..tok.end].to_string();
                Ok(self.node(NodeKind::Literal, start, vec![], Attrs::Literal { value: LiteralValue::String(s), raw }))
            }
            TokKind::Template { .. } => self.parse_template(),
            TokKind::Punct("/") | TokKind::Punct("/=") => {
                let slash = self.cur.clone();
                self.cur = self.lexer.rescan_regex(slash.start, slash.nl_before)?;
                let tok = self.bump()?;
                let raw = self.src[tok.start..tok.end].to_string();
                let value = match tok.kind {
                    TokKind::Regex { pattern, flags } => LiteralValue::Regex { pattern, flags },
                    _ => unreachable!("rescan_regex yields a regex token"),
                };
                Ok(self.node(NodeKind::Literal, start, vec![], Attrs::Literal { value, raw }))
            }
            TokKind::Punct("[") => self.parse_array_literal(),
            TokKind::Punct("{") => self.parse_object_literal(),
            TokKind::Punct("(") => self.parse_paren(),
            TokKind::Punct("@") => self.error("decorators are not supported", start),
            TokKind::Punct("<") => self.error("JSX is not supported", start),
            _ => self.unexpected("unexpected token"),
        }
    }

    /// Parenthesized expression or arrow parameter list (cover grammar).
    ///
    /// Arrow-only forms return placeholder nodes: `()` is `Empty`, a group
    /// containing a rest element or trailing comma is a `Sequence` tagged with
    /// `Attrs::Label(None)`.
    fn parse_paren(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        self.bump()?;
        let mut items = Vec::new();
        let mut arrow_only = false;
        if self.is(")") {
            self.bump()?;
            if !self.is("=>") {
                return self.unexpected("expected '=>' after parameter list");
            }
            self.paren_group = Some((start, self.prev_end));
            return Ok(self.node(NodeKind::Empty, start, vec![], Attrs::None));
        }
        loop {
            if self.is("...") {
                let rstart = self.cur.start;
                self.bump()?;
                let target = self.parse_binding_target()?;
                items.push(self.node(NodeKind::Rest, rstart, vec![target], Attrs::None));
                arrow_only = true;
                break;
            }
            items.push(self.parse_assign(false)?);
            if !self.eat(",")? {
                break;
            }
            if self.is(")") {
                arrow_only = true;
                break;
            }
        }
        self.expect(")")?;
        if arrow_only && !self.is("=>") {
            return self.unexpected("expected '=>' after parameter list");
        }
        let node = if items.len() == 1 && !arrow_only {
            items.pop().expect("one item")
        } else if arrow_only {
            AstNode::new(NodeKind::Sequence, self.span_from(start), items, Attrs::Label(None))
        } else {
            let inner_start = items[0].span.start;
            let inner_end = items.last().map_or(inner_start, |n| n.span.end);
            AstNode::new(NodeKind::Sequence, self.lines.span(self.src, inner_start, inner_end), items, Attrs::None)
        };
        self.paren_group = Some((start, self.prev_end));
        Ok(node)
    }

    fn parse_array_literal(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        self.bump()?;
        let mut elements = Vec::new();
        while !self.is("]") {
            if self.is(",") {
                let pos = self.cur.start;
                self.bump()?;
                elements.push(AstNode::new(NodeKind::Hole, self.lines.span(self.src, pos, pos), vec![], Attrs::None));
                continue;
            }
            if self.is("...") {
                let sstart = self.cur.start;
                self.bump()?;
                let arg = self.parse_assign(false)?;
                elements.push(self.node(NodeKind::Spread, sstart, vec![arg], Attrs::None));
            } else {
                elements.push(self.parse_assign(false)?);
            }
            if !self.is("]") {
                self.expect(",")?;
            }
        }
        self.bump()?;
        Ok(self.node(NodeKind::ArrayLiteral, start, elements, Attrs::None))
    }

    fn parse_object_literal(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        self.bump()?;
        let mut props = Vec::new();
        while !self.is("}") {
            props.push(self.parse_object_property()?);
            if !self.is("}") {
                self.expect(",")?;
            }
        }
        self.bump()?;
        Ok(self.node(NodeKind::ObjectLiteral, start, props, Attrs::None))
    }

    fn parse_object_property(&mut self) -> PResult<AstNode> {
        let start = self.cur.start;
        if self.is("...") {
            return self.error("object spread is not supported", start);
        }
        let mut accessor = None;
        if (self.is_kw("get") || self.is_kw("set")) && self.next_is_property_key()? {
            accessor = Some(if self.is_kw("get") { PropKind::Get } else { PropKind::Set });
            self.bump()?;
        }
        let generator = self.eat("*")?;
        let shorthand_name = match &self.cur.kind {
            TokKind::Ident(n) if !is_reserved(n) => Some(n.clone()),
            _ => None,
        };
        let (key, key_node) = self.parse_property_key()?;
        let computed = key_node.is_some();
        let mut children: Vec<AstNode> = key_node.into_iter().collect();

        if accessor.is_some() || generator || self.is("(") {
            let func = self.parse_method_function(start, generator)?;
            children.push(func);
            let kind = accessor.unwrap_or(PropKind::Method);
            return Ok(self.node(NodeKind::Property, start, children, Attrs::Property(PropertyInfo { key, computed, kind })));
        }
        if self.eat(":")? {
            children.push(self.parse_assign(false)?);
            return Ok(self.node(NodeKind::Property, start, children, Attrs::Property(PropertyInfo { key, computed, kind: PropKind::Init })));
        }
        let name = match shorthand_name {
            Some(name) if !computed => name,
            _ => return self.unexpected("expected ':'"),
        };
        let ident = self.node(NodeKind::Identifier, start, vec![], Attrs::Ident(name));
        let value = if self.eat("=")? {
            // only valid once the literal is reinterpreted as a pattern
            let default = self.parse_assign(false)?;
            self.node(NodeKind::DefaultValue, start, vec![ident, default], Attrs::None)
        } else {
            ident
        };
        children.push(value);
        Ok(self.node(NodeKind::Property, start, children, Attrs::Property(PropertyInfo { key, computed, kind: PropKind::Shorthand })))
    }
}
