//! Source ingestion: JS and HTML text to normalized trees, scopes, and line metrics.

pub mod ast;
pub mod chains;
pub mod html;
pub mod lexer;
pub mod lines;
pub mod loc;
pub mod parser;
pub mod printer;
pub mod scope;
pub mod visit;

use std::path::Path;

use serde::{Deserialize, Serialize};

pub use ast::{AstNode, Attrs, NodeKind, Span};
pub use chains::{extract_chains, MemberChain};
pub use html::ScriptOrigin;
pub use lines::LineIndex;
pub use loc::count_loc;
pub use scope::{build_scopes, ScopeModel};

use parser::{parse_program_with, ParseOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SourceKind {
    #[serde(rename = "js")]
    Js,
    #[serde(rename = "html")]
    Html,
}

impl SourceKind {
    /// `.js` files are JavaScript; `.html`/`.htm` are HTML.
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "js" => Some(SourceKind::Js),
            "html" | "htm" => Some(SourceKind::Html),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseDiagnostic {
    pub message: String,
    pub line: u32,
    pub column: u32,
}

#[derive(Debug, Clone)]
pub struct EmbeddedScript {
    pub origin: ScriptOrigin,
    /// Location of the code inside the host HTML file.
    pub html_span: Span,
    pub code: String,
    /// Event attribute name, for `EventAttribute` fragments.
    pub attribute: Option<String>,
    /// The fragment parsed as its own JS unit; positions are host-file positions.
    pub unit: SourceUnit,
}

#[derive(Debug, Clone)]
pub struct SourceUnit {
    pub path: String,
    pub kind: SourceKind,
    pub text: String,
    pub ast: Option<AstNode>,
    pub diagnostics: Vec<ParseDiagnostic>,
    pub embedded: Vec<EmbeddedScript>,
    pub tokens: Vec<(usize, usize)>,
    pub comments: Vec<(usize, usize)>,
    pub lines: LineIndex,
    pub is_module: bool,
    pub minified: bool,
}

impl SourceUnit {
    pub fn is_parsed(&self) -> bool {
        self.ast.is_some()
    }

    pub fn span(&self, start: usize, end: usize) -> Span {
        self.lines.span(&self.text, start, end)
    }

    /// Whole-text span.
    pub fn full_span(&self) -> Span {
        self.span(0, self.text.len())
    }

    pub fn slice(&self, span: &Span) -> &str {
        self.text.get(span.start..span.end).unwrap_or("")
    }
}

/// Minified heuristic: a line over 5000 chars, or an average line length over 500.
pub fn looks_minified(text: &str) -> bool {
    let mut lines = 0usize;
    let mut longest = 0usize;
    for line in text.lines() {
        lines += 1;
        longest = longest.max(line.len());
    }
    lines > 0 && (longest > 5000 || text.len() / lines > 500)
}

/// Decodes file bytes as UTF-8, replacing invalid sequences; returns a note when lossy.
pub fn decode_source(bytes: &[u8]) -> (String, Option<String>) {
    match std::str::from_utf8(bytes) {
        Ok(s) => (s.to_string(), None),
        Err(e) => (
            String::from_utf8_lossy(bytes).into_owned(),
            Some(format!("invalid UTF-8 at byte {}; replaced with U+FFFD", e.valid_up_to())),
        ),
    }
}

fn parse_js(path: &str, text: String, lines: LineIndex, options: ParseOptions) -> SourceUnit {
    let minified = looks_minified(&text);
    let (ast, diagnostics, tokens, comments, is_module) = match parse_program_with(&text, &lines, options) {
        Ok(out) => (Some(out.program), Vec::new(), out.tokens, out.comments, out.is_module),
        Err(err) => {
            let (line, column) = lines.position(&text, err.pos);
            (None, vec![ParseDiagnostic { message: err.message, line, column }], Vec::new(), Vec::new(), false)
        }
    };
    SourceUnit {
        path: path.to_string(),
        kind: SourceKind::Js,
        text,
        ast,
        diagnostics,
        embedded: Vec::new(),
        tokens,
        comments,
        lines,
        is_module,
        minified,
    }
}

/// Parses one file. Never fails: syntax errors become diagnostics.
pub fn parse_source(path: &str, text: &str, kind: SourceKind) -> SourceUnit {
    match kind {
        SourceKind::Js => parse_js(path, text.to_string(), LineIndex::new(text), ParseOptions::default()),
        SourceKind::Html => parse_html(path, text),
    }
}

fn parse_html(path: &str, text: &str) -> SourceUnit {
    let lines = LineIndex::new(text);
    let embedded = html::extract_fragments(text)
        .into_iter()
        .map(|frag| {
            let (line, col) = lines.position(text, frag.start);
            let frag_lines = LineIndex::with_base(&frag.code, line, col);
            let options = ParseOptions { function_body: frag.origin != ScriptOrigin::ScriptTag };
            let unit = parse_js(path, frag.code.clone(), frag_lines, options);
            EmbeddedScript {
                origin: frag.origin,
                html_span: lines.span(text, frag.start, frag.end),
                code: frag.code,
                attribute: frag.attribute,
                unit,
            }
        })
        .collect();
    SourceUnit {
        path: path.to_string(),
        kind: SourceKind::Html,
        text: text.to_string(),
        ast: None,
        diagnostics: Vec::new(),
        embedded,
        tokens: Vec::new(),
        comments: Vec::new(),
        lines,
        is_module: false,
        minified: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_js_unit() {
        let unit = parse_source("a.js", "var x = 1;", SourceKind::Js);
        let ast = unit.ast.as_ref().unwrap();
        assert_eq!(ast.kind, NodeKind::Program);
        assert_eq!(ast.children[0].kind, NodeKind::VarDecl);
        assert!(unit.diagnostics.is_empty());
        assert!(unit.embedded.is_empty());
    }

    #[test]
    fn syntax_error_becomes_single_diagnostic() {
        let unit = parse_source("a.js", "function (", SourceKind::Js);
        assert!(unit.ast.is_none());
        assert_eq!(unit.diagnostics.len(), 1);
        assert_eq!(unit.diagnostics[0].line, 1);
    }

    #[test]
    fn html_event_attribute_is_embedded() {
        let unit = parse_source("p.html", "<button onclick=\"f()\">", SourceKind::Html);
        assert_eq!(unit.embedded.len(), 1);
        let e = &unit.embedded[0];
        assert_eq!(e.origin, ScriptOrigin::EventAttribute);
        assert_eq!(e.code, "f()");
        assert!(e.unit.ast.is_some());
        assert_eq!(e.html_span.start_line, 1);
        assert_eq!(e.html_span.start_col, 18);
    }

    #[test]
    fn event_handler_may_return() {
        let unit = parse_source("p.html", "<a onclick=\"go(); return false;\">x</a>", SourceKind::Html);
        assert!(unit.embedded[0].unit.ast.is_some());
    }

    #[test]
    fn embedded_positions_are_host_positions() {
        let html = "<html>\n<script>\nvar a = 1;\n</script>";
        let unit = parse_source("p.html", html, SourceKind::Html);
        let inner = unit.embedded[0].unit.ast.as_ref().unwrap();
        assert_eq!(inner.children[0].span.start_line, 3);
        assert_eq!(inner.children[0].span.start_col, 1);
    }

    #[test]
    fn minified_detection() {
        assert!(looks_minified(&"a;".repeat(3000)));
        assert!(!looks_minified("var a = 1;\nvar b = 2;\n"));
    }

    #[test]
    fn lossy_decode_reports() {
        let (text, note) = decode_source(b"var a = '\xff';");
        assert!(text.contains('\u{fffd}'));
        assert!(note.is_some());
    }

    #[test]
    fn kind_from_extension() {
        assert_eq!(SourceKind::from_path(Path::new("x/Game.JS")), Some(SourceKind::Js));
        assert_eq!(SourceKind::from_path(Path::new("index.htm")), Some(SourceKind::Html));
        assert_eq!(SourceKind::from_path(Path::new("style.css")), None);
    }
}
