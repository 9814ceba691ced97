use super::ast::Span;

/// Maps byte offsets to 1-based line/column pairs.
///
/// An index may carry a base position so that fragments cut out of a larger
/// document (inline scripts in HTML) report positions in the host file.
#[derive(Debug, Clone)]
pub struct LineIndex {
    line_starts: Vec<usize>,
    ascii_lines: Vec<bool>,
    len: usize,
    base_line: u32,
    base_col: u32,
}

impl LineIndex {
    pub fn new(text: &str) -> Self {
        Self::with_base(text, 1, 1)
    }

    /// `base_line`/`base_col` are the host position of byte 0.
    pub fn with_base(text: &str, base_line: u32, base_col: u32) -> Self {
        let mut line_starts = vec![0];
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b'\n' => line_starts.push(i + 1),
                b'\r' => {
                    if bytes.get(i + 1) == Some(&b'\n') {
                        i += 1;
                    }
                    line_starts.push(i + 1);
                }
                _ => {}
            }
            i += 1;
        }
        let ascii_lines = line_starts
            .iter()
            .enumerate()
            .map(|(n, &start)| {
                let end = line_starts.get(n + 1).copied().unwrap_or(text.len());
                text.as_bytes()[start..end].is_ascii()
            })
            .collect();
        LineIndex { line_starts, ascii_lines, len: text.len(), base_line, base_col }
    }

    pub fn line_count(&self) -> usize {
        self.line_starts.len()
    }

    /// Zero-based line number containing `offset`.
    pub fn line_of(&self, offset: usize) -> usize {
        match self.line_starts.binary_search(&offset) {
            Ok(line) => line,
            Err(next) => next - 1,
        }
    }

    pub fn line_start(&self, line: usize) -> usize {
        self.line_starts[line]
    }

    pub fn line_end(&self, line: usize) -> usize {
        self.line_starts.get(line + 1).copied().unwrap_or(self.len)
    }

    pub fn position(&self, text: &str, offset: usize) -> (u32, u32) {
        let offset = offset.min(self.len);
        let line = self.line_of(offset);
        let start = self.line_starts[line];
        let col = if self.ascii_lines[line] {
            offset - start
        } else {
            text.get(start..offset).map_or(offset - start, |s| s.chars().count())
        } as u32;
        if line == 0 {
            (self.base_line, self.base_col + col)
        } else {
            (self.base_line + line as u32, col + 1)
        }
    }

    pub fn span(&self, text: &str, start: usize, end: usize) -> Span {
        let (start_line, start_col) = self.position(text, start);
        let (end_line, end_col) = self.position(text, end);
        Span { start, end, start_line, start_col, end_line, end_col }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let text = "ab\ncd\r\nef";
        let idx = LineIndex::new(text);
        assert_eq!(idx.line_count(), 3);
        assert_eq!(idx.position(text, 0), (1, 1));
        assert_eq!(idx.position(text, 4), (2, 2));
        assert_eq!(idx.position(text, 7), (3, 1));
    }

    #[test]
    fn base_offsets_shift_first_line_only() {
        let text = "x\ny";
        let idx = LineIndex::with_base(text, 10, 5);
        assert_eq!(idx.position(text, 0), (10, 5));
        assert_eq!(idx.position(text, 2), (11, 1));
    }

    #[test]
    fn non_ascii_columns_count_chars() {
        let text = "é = 1";
        let idx = LineIndex::new(text);
        assert_eq!(idx.position(text, 3), (1, 3));
    }
}
