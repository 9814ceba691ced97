//! On-demand ECMAScript tokenizer.
//!
//! The parser pulls one token at a time and asks for a rescan when a `/`
//! begins a regular expression or a `}` resumes a template literal, so the
//! lexer itself never has to guess the goal symbol.

#[derive(Debug, Clone, PartialEq)]
pub enum TokKind {
    Ident(String),
    Punct(&'static str),
    Num(f64),
    Str(String),
    /// One template chunk: cooked text, and whether it ends the literal (`` ` ``)
    /// rather than opening a substitution (`${`).
    Template { raw: String, tail: bool },
    Regex { pattern: String, flags: String },
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokKind,
    pub start: usize,
    pub end: usize,
    /// A line terminator occurs between the previous token and this one.
    pub nl_before: bool,
}

impl Token {
    pub fn is_punct(&self, p: &str) -> bool {
        matches!(self.kind, TokKind::Punct(q) if q == p)
    }

    pub fn is_ident(&self, name: &str) -> bool {
        matches!(&self.kind, TokKind::Ident(n) if n == name)
    }

    pub fn ident(&self) -> Option<&str> {
        match &self.kind {
            TokKind::Ident(n) => Some(n),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexError {
    pub message: String,
    pub pos: usize,
}

type LexResult<T> = Result<T, LexError>;

const PUNCTUATORS: &[&str] = &[
    ">>>=", "...", "===", "!==", "**=", "<<=", ">>=", ">>>", "=>", "==", "!=", "<=", ">=", "&&",
    "||", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "**", "{", "}",
    "(", ")", "[", "]", ";", ",", "<", ">", "+", "-", "*", "/", "%", "&", "|", "^", "!", "~", "?",
    ":", "=", ".", "@", "#",
];

#[derive(Debug, Clone)]
pub struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    /// Byte ranges of comments seen so far, in source order.
    pub comments: Vec<(usize, usize)>,
    record_comments: bool,
}

fn is_line_terminator(c: char) -> bool {
    matches!(c, '\n' | '\r' | '\u{2028}' | '\u{2029}')
}

fn is_id_start(c: char) -> bool {
    c == '$' || c == '_' || c.is_alphabetic()
}

fn is_id_part(c: char) -> bool {
    c == '$' || c == '_' || c == '\u{200c}' || c == '\u{200d}' || c.is_alphanumeric()
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0, comments: Vec::new(), record_comments: true }
    }

    /// A throwaway copy for lookahead that does not record comments.
    pub fn fork(&self) -> Self {
        Lexer { src: self.src, pos: self.pos, comments: Vec::new(), record_comments: false }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_char_at(&self, offset: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(offset)
    }

    fn bump_char(&mut self) -> Option<char> {
        let c = self.peek_char()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn err<T>(&self, message: impl Into<String>, pos: usize) -> LexResult<T> {
        Err(LexError { message: message.into(), pos })
    }

    /// Skips whitespace and comments; returns whether a line terminator was crossed.
    fn skip_trivia(&mut self) -> LexResult<bool> {
        let mut newline = false;
        while let Some(c) = self.peek_char() {
            if is_line_terminator(c) {
                newline = true;
                self.bump_char();
            } else if c.is_whitespace() || c == '\u{feff}' {
                self.bump_char();
            } else if self.src[self.pos..].starts_with("//") {
                let start = self.pos;
                while let Some(c) = self.peek_char() {
                    if is_line_terminator(c) {
                        break;
                    }
                    self.bump_char();
                }
                self.push_comment(start);
            } else if self.src[self.pos..].starts_with("/*") {
                let start = self.pos;
                match self.src[self.pos + 2..].find("*/") {
                    Some(idx) => {
                        let body = &self.src[self.pos + 2..self.pos + 2 + idx];
                        if body.chars().any(is_line_terminator) {
                            newline = true;
                        }
                        self.pos += idx + 4;
                    }
                    None => return self.err("unterminated comment", start),
                }
                self.push_comment(start);
            } else if self.pos == 0 && self.src.starts_with("#!") {
                while let Some(c) = self.peek_char() {
                    if is_line_terminator(c) {
                        break;
                    }
                    self.bump_char();
                }
            } else {
                break;
            }
        }
        Ok(newline)
    }

    fn push_comment(&mut self, start: usize) {
        if self.record_comments {
            self.comments.push((start, self.pos));
        }
    }

    /// Reads the next token treating `/` as division.
    pub fn next_token(&mut self) -> LexResult<Token> {
        let nl_before = self.skip_trivia()?;
        let start = self.pos;
        let c = match self.peek_char() {
            None => return Ok(Token { kind: TokKind::Eof, start, end: start, nl_before }),
            Some(c) => c,
        };
        let kind = if is_id_start(c) {
            self.read_ident()
        } else if c == '\\' {
            return self.err("unicode escapes in identifiers are not supported", start);
        } else if c.is_ascii_digit() || (c == '.' && self.peek_char_at(1).is_some_and(|d| d.is_ascii_digit())) {
            self.read_number()?
        } else if c == '"' || c == '\'' {
            self.read_string(c)?
        } else if c == '`' {
            self.bump_char();
            self.read_template_chunk(start)?
        } else {
            let rest = &self.src[self.pos..];
            match PUNCTUATORS.iter().find(|p| rest.starts_with(**p)) {
                Some(p) => {
                    self.pos += p.len();
                    TokKind::Punct(p)
                }
                None => return self.err(format!("unexpected character '{c}'"), start),
            }
        };
        Ok(Token { kind, start, end: self.pos, nl_before })
    }

    /// Re-reads from `start` (the position of a `/` or `/=` token) as a regex literal.
    pub fn rescan_regex(&mut self, start: usize, nl_before: bool) -> LexResult<Token> {
        self.pos = start + 1;
        let mut in_class = false;
        loop {
            let c = match self.bump_char() {
                None => return self.err("unterminated regular expression", start),
                Some(c) => c,
            };
            if is_line_terminator(c) {
                return self.err("unterminated regular expression", start);
            }
            match c {
                '\\' => {
                    if self.bump_char().is_none_or(is_line_terminator) {
                        return self.err("unterminated regular expression", start);
                    }
                }
                '[' => in_class = true,
                ']' => in_class = false,
                '/' if !in_class => break,
                _ => {}
            }
        }
        let pattern = self.src[start + 1..self.pos - 1].to_string();
        let flags_start = self.pos;
        while self.peek_char().is_some_and(is_id_part) {
            self.bump_char();
        }
        let flags = self.src[flags_start..self.pos].to_string();
        Ok(Token { kind: TokKind::Regex { pattern, flags }, start, end: self.pos, nl_before })
    }

    /// Re-reads from `start` (the position of a `}` closing a substitution) as
    /// the continuation of a template literal.
    pub fn rescan_template_continuation(&mut self, start: usize, nl_before: bool) -> LexResult<Token> {
        self.pos = start + 1;
        let kind = self.read_template_chunk(start)?;
        Ok(Token { kind, start, end: self.pos, nl_before })
    }

    fn read_ident(&mut self) -> TokKind {
        let start = self.pos;
        while self.peek_char().is_some_and(is_id_part) {
            self.bump_char();
        }
        TokKind::Ident(self.src[start..self.pos].to_string())
    }

    fn read_number(&mut self) -> LexResult<TokKind> {
        let start = self.pos;
        let rest = &self.src[start..];
        let radix = if rest.len() > 1 && rest.starts_with('0') {
            match rest.as_bytes()[1] {
                b'x' | b'X' => Some(16),
                b'o' | b'O' => Some(8),
                b'b' | b'B' => Some(2),
                _ => None,
            }
        } else {
            None
        };
        let value = if let Some(radix) = radix {
            self.pos += 2;
            let digits_start = self.pos;
            while self.peek_char().is_some_and(|c| c.is_digit(radix)) {
                self.bump_char();
            }
            if self.pos == digits_start {
                return self.err("missing digits in numeric literal", start);
            }
            self.src[digits_start..self.pos]
                .chars()
                .fold(0f64, |acc, c| acc * radix as f64 + c.to_digit(radix).unwrap_or(0) as f64)
        } else if rest.len() > 1
            && rest.starts_with('0')
            && rest.as_bytes()[1].is_ascii_digit()
        {
            // legacy octal (or decimal when an 8/9 appears)
            while self.peek_char().is_some_and(|c| c.is_ascii_digit()) {
                self.bump_char();
            }
            let digits = &self.src[start..self.pos];
            if digits.chars().all(|c| c.is_digit(8)) {
                digits.chars().fold(0f64, |acc, c| acc * 8.0 + c.to_digit(8).unwrap_or(0) as f64)
            } else {
                digits.parse::<f64>().unwrap_or(0.0)
            }
        } else {
            while self.peek_char().is_some_and(|c| c.is_ascii_digit()) {
                self.bump_char();
            }
            if self.peek_char() == Some('.') {
                self.bump_char();
                while self.peek_char().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump_char();
                }
            }
            if matches!(self.peek_char(), Some('e' | 'E')) {
                let save = self.pos;
                self.bump_char();
                if matches!(self.peek_char(), Some('+' | '-')) {
                    self.bump_char();
                }
                if self.peek_char().is_some_and(|c| c.is_ascii_digit()) {
                    while self.peek_char().is_some_and(|c| c.is_ascii_digit()) {
                        self.bump_char();
                    }
                } else {
                    self.pos = save;
                    return self.err("missing exponent in numeric literal", start);
                }
            }
            self.src[start..self.pos].parse::<f64>().unwrap_or(0.0)
        };
        if self.peek_char().is_some_and(is_id_start) {
            return self.err("identifier directly after number", self.pos);
        }
        Ok(TokKind::Num(value))
    }

    fn read_escape(&mut self, out: &mut String, start: usize) -> LexResult<()> {
        let c = match self.bump_char() {
            None => return self.err("unterminated string literal", start),
            Some(c) => c,
        };
        match c {
            'n' => out.push('\n'),
            't' => out.push('\t'),
            'r' => out.push('\r'),
            'b' => out.push('\u{8}'),
            'f' => out.push('\u{c}'),
            'v' => out.push('\u{b}'),
            '0' if !self.peek_char().is_some_and(|d| d.is_ascii_digit()) => out.push('\0'),
            'x' => {
                let code = self.read_hex_digits(2, start)?;
                out.push(char::from_u32(code).unwrap_or('\u{fffd}'));
            }
            'u' => {
                let code = if self.peek_char() == Some('{') {
                    self.bump_char();
                    let digits_start = self.pos;
                    while self.peek_char().is_some_and(|c| c.is_ascii_hexdigit()) {
                        self.bump_char();
                    }
                    let code = u32::from_str_radix(&self.src[digits_start..self.pos], 16)
                        .map_err(|_| LexError { message: "invalid unicode escape".into(), pos: start })?;
                    if self.bump_char() != Some('}') {
                        return self.err("invalid unicode escape", start);
                    }
                    code
                } else {
                    self.read_hex_digits(4, start)?
                };
                out.push(char::from_u32(code).unwrap_or('\u{fffd}'));
            }
            '\r' => {
                if self.peek_char() == Some('\n') {
                    self.bump_char();
                }
            }
            c if is_line_terminator(c) => {}
            c if c.is_digit(8) => {
                // legacy octal escape
                let mut code = c.to_digit(8).unwrap_or(0);
                for _ in 0..2 {
                    match self.peek_char().and_then(|d| d.to_digit(8)) {
                        Some(d) if code * 8 + d < 256 => {
                            code = code * 8 + d;
                            self.bump_char();
                        }
                        _ => break,
                    }
                }
                out.push(char::from_u32(code).unwrap_or('\u{fffd}'));
            }
            other => out.push(other),
        }
        Ok(())
    }

    fn read_hex_digits(&mut self, n: usize, start: usize) -> LexResult<u32> {
        let mut code = 0u32;
        for _ in 0..n {
            match self.bump_char().and_then(|c| c.to_digit(16)) {
                Some(d) => code = code * 16 + d,
                None => return self.err("invalid hexadecimal escape", start),
            }
        }
        Ok(code)
    }

    fn read_string(&mut self, quote: char) -> LexResult<TokKind> {
        let start = self.pos;
        self.bump_char();
        let mut value = String::new();
        loop {
            match self.bump_char() {
                None => return self.err("unterminated string literal", start),
                Some(c) if c == quote => break,
                Some('\\') => self.read_escape(&mut value, start)?,
                Some('\n' | '\r') => return self.err("unterminated string literal", start),
                Some(c) => value.push(c),
            }
        }
        Ok(TokKind::Str(value))
    }

    /// Reads template characters after a `` ` `` or `}` up to `${` or the closing backtick.
    fn read_template_chunk(&mut self, start: usize) -> LexResult<TokKind> {
        let mut cooked = String::new();
        loop {
            match self.bump_char() {
                None => return self.err("unterminated template literal", start),
                Some('`') => return Ok(TokKind::Template { raw: cooked, tail: true }),
                Some('$') if self.peek_char() == Some('{') => {
                    self.bump_char();
                    return Ok(TokKind::Template { raw: cooked, tail: false });
                }
                Some('\\') => {
                    cooked.push('\\');
                    if let Some(c) = self.bump_char() {
                        cooked.push(c);
                    }
                }
                Some(c) => cooked.push(c),
            }
        }
    }
}
