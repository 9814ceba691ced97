//! CLOC-style line counting: a line counts when it holds at least one token
//! that is not part of a comment.

use super::ast::Span;
use super::SourceUnit;

/// Number of lines within `span` carrying at least one code token.
pub fn count_loc(span: Span, unit: &SourceUnit) -> usize {
    count_lines(unit, span.start, span.end, &[])
}

/// Counts code lines among tokens lying inside `[start, end)` and outside every
/// `excluded` byte range.
pub fn count_lines(unit: &SourceUnit, start: usize, end: usize, excluded: &[(usize, usize)]) -> usize {
    if start >= end {
        return 0;
    }
    let tokens = &unit.tokens;
    let first = tokens.partition_point(|&(s, _)| s < start);
    let mut last_line: Option<usize> = None;
    let mut count = 0;
    for &(ts, te) in &tokens[first..] {
        if ts >= end {
            break;
        }
        if te > end || excluded.iter().any(|&(xs, xe)| xs <= ts && te <= xe) {
            continue;
        }
        let l0 = unit.lines.line_of(ts);
        let l1 = unit.lines.line_of(te.saturating_sub(1).max(ts));
        for line in l0..=l1 {
            if last_line.is_none_or(|prev| line > prev) {
                count += 1;
                last_line = Some(line);
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_source, SourceKind};

    fn function_span(unit: &SourceUnit) -> Span {
        unit.ast.as_ref().unwrap().children[0].span
    }

    #[test]
    fn blank_lines_are_excluded() {
        let unit = parse_source("a.js", "function f() {\n\n}", SourceKind::Js);
        assert_eq!(count_loc(function_span(&unit), &unit), 2);
    }

    #[test]
    fn comment_only_lines_are_excluded() {
        let unit = parse_source("a.js", "function f() {\n  // todo\n}", SourceKind::Js);
        assert_eq!(count_loc(function_span(&unit), &unit), 2);
        let one_line = parse_source("a.js", "function f() { /* todo */ }", SourceKind::Js);
        assert_eq!(count_loc(function_span(&one_line), &one_line), 1);
    }

    #[test]
    fn empty_span_is_zero() {
        let unit = parse_source("a.js", "var a;", SourceKind::Js);
        assert_eq!(count_loc(Span::default(), &unit), 0);
    }

    #[test]
    fn multiline_template_counts_every_line() {
        let unit = parse_source("a.js", "var s = `a\nb\nc`;", SourceKind::Js);
        assert_eq!(count_loc(unit.full_span(), &unit), 3);
    }

    #[test]
    fn exclusion_ranges() {
        let src = "function f() {\n  a();\n  var g = function () {\n    b();\n  };\n}";
        let unit = parse_source("a.js", src, SourceKind::Js);
        let inner_start = src.find("function ()").unwrap();
        let inner_end = src.find("};").unwrap() + 1;
        assert_eq!(count_lines(&unit, 0, src.len(), &[(inner_start, inner_end)]), 5);
        assert_eq!(count_lines(&unit, 0, src.len(), &[]), 6);
    }
}
