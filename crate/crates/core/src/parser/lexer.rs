//! Tokenizer shared by both DSLs.
//!
//! Table rows are lexed line-wise: a `|` opens a row that runs to the last
//! unescaped `|` on the same line. Whatever follows on that line (row marks,
//! comments) is tokenized normally.

use std::path::Path;

use crate::diagnostic::{Code, Diagnostic};
use crate::model::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCell {
    /// Cell text exactly as written, escapes included.
    pub raw: String,
    /// Byte offset of the first byte of `raw`.
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Str(String),
    TripleStr(String),
    Int(i64),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Dot,
    Eq,
    PipeRow(Vec<RawCell>),
    Eof,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(w) => format!("`{w}`"),
            TokenKind::Str(_) => "string literal".into(),
            TokenKind::TripleStr(_) => "triple-quoted string".into(),
            TokenKind::Int(i) => format!("integer {i}"),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::LBracket => "`[`".into(),
            TokenKind::RBracket => "`]`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Dot => "`.`".into(),
            TokenKind::Eq => "`=`".into(),
            TokenKind::PipeRow(_) => "table row".into(),
            TokenKind::Eof => "end of file".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
    /// First token on its line.
    pub line_start: bool,
}

/// Maps byte offsets to 1-based line/column pairs.
#[derive(Debug, Clone)]
pub struct LineIndex<'a> {
    text: &'a str,
    starts: Vec<usize>,
}

impl<'a> LineIndex<'a> {
    pub fn new(text: &'a str) -> LineIndex<'a> {
        let mut starts = vec![0];
        starts.extend(text.match_indices('\n').map(|(i, _)| i + 1));
        LineIndex { text, starts }
    }

    pub fn span(&self, offset: usize, length: usize) -> Span {
        let offset = offset.min(self.text.len());
        let line = match self.starts.binary_search(&offset) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let start = self.starts[line];
        let column = self.text.get(start..offset).map_or(offset - start, |s| s.chars().count()) + 1;
        let length = length.min(self.text.len() - offset);
        Span::new(offset, line + 1, column, length)
    }
}

pub struct Lexed {
    pub tokens: Vec<Token>,
    pub diagnostics: Vec<Diagnostic>,
}

pub fn tokenize(text: &str, file: &Path) -> Lexed {
    let mut lexer = Lexer {
        text,
        pos: 0,
        index: LineIndex::new(text),
        file,
        tokens: Vec::new(),
        diagnostics: Vec::new(),
        last_line: 0,
    };
    lexer.run();
    Lexed { tokens: lexer.tokens, diagnostics: lexer.diagnostics }
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
    index: LineIndex<'a>,
    file: &'a Path,
    tokens: Vec<Token>,
    diagnostics: Vec<Diagnostic>,
    last_line: usize,
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek_at(&self, ahead: usize) -> Option<char> {
        self.text[self.pos..].chars().nth(ahead)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn push(&mut self, kind: TokenKind, start: usize) {
        let span = self.index.span(start, self.pos - start);
        let line_start = span.line != self.last_line;
        self.last_line = span.line;
        self.tokens.push(Token { kind, span, line_start });
    }

    fn error(&mut self, start: usize, len: usize, message: impl Into<String>) {
        let span = self.index.span(start, len);
        self.diagnostics.push(Diagnostic::error(Code::E001, self.file, span, message));
    }

    fn line_end(&self) -> usize {
        self.text[self.pos..].find('\n').map_or(self.text.len(), |i| self.pos + i)
    }

    fn run(&mut self) {
        while let Some(c) = self.peek() {
            let start = self.pos;
            match c {
                c if c.is_whitespace() => {
                    self.bump();
                }
                '/' if self.peek_at(1) == Some('/') => {
                    self.pos = self.line_end();
                }
                '{' => self.single(TokenKind::LBrace),
                '}' => self.single(TokenKind::RBrace),
                '(' => self.single(TokenKind::LParen),
                ')' => self.single(TokenKind::RParen),
                '[' => self.single(TokenKind::LBracket),
                ']' => self.single(TokenKind::RBracket),
                ',' => self.single(TokenKind::Comma),
                ':' => self.single(TokenKind::Colon),
                '.' => self.single(TokenKind::Dot),
                '=' => self.single(TokenKind::Eq),
                '|' => self.pipe_row(),
                '"' => {
                    if self.text[self.pos..].starts_with("\"\"\"") {
                        self.triple_string()
                    } else {
                        self.string()
                    }
                }
                c if c.is_ascii_digit() => self.number(start),
                '-' if self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) => {
                    self.bump();
                    self.number(start)
                }
                c if c.is_ascii_alphabetic() => {
                    while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                        self.bump();
                    }
                    let word = self.text[start..self.pos].to_string();
                    self.push(TokenKind::Ident(word), start);
                }
                other => {
                    self.bump();
                    self.error(start, other.len_utf8(), format!("unexpected character {other:?}"));
                }
            }
        }
        let end = self.text.len();
        let span = self.index.span(end, 0);
        self.tokens.push(Token { kind: TokenKind::Eof, span, line_start: true });
    }

    fn single(&mut self, kind: TokenKind) {
        let start = self.pos;
        self.bump();
        self.push(kind, start);
    }

    fn number(&mut self, start: usize) {
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        let digits = &self.text[start..self.pos];
        match digits.parse::<i64>() {
            Ok(value) => self.push(TokenKind::Int(value), start),
            Err(_) => self.error(start, digits.len(), format!("integer `{digits}` out of range")),
        }
    }

    fn string(&mut self) {
        let start = self.pos;
        self.bump();
        let mut value = String::new();
        loop {
            match self.peek() {
                None | Some('\n') => {
                    self.error(start, self.pos - start, "unterminated string literal");
                    return;
                }
                Some('"') => {
                    self.bump();
                    break;
                }
                Some('\\') => {
                    let esc_start = self.pos;
                    self.bump();
                    match self.bump() {
                        Some(c) => match unescape(c) {
                            Some(u) => value.push(u),
                            None => self.error(esc_start, 1 + c.len_utf8(), format!("unknown escape `\\{c}`")),
                        },
                        None => {
                            self.error(start, self.pos - start, "unterminated string literal");
                            return;
                        }
                    }
                }
                Some(c) => {
                    self.bump();
                    value.push(c);
                }
            }
        }
        self.push(TokenKind::Str(value), start);
    }

    fn triple_string(&mut self) {
        let start = self.pos;
        let body = start + 3;
        match self.text[body..].find("\"\"\"") {
            Some(rel) => {
                let content = self.text[body..body + rel].to_string();
                self.pos = body + rel + 3;
                self.push(TokenKind::TripleStr(content), start);
            }
            None => {
                self.pos = self.text.len();
                self.error(start, 3, "unterminated triple-quoted string");
            }
        }
    }

    fn pipe_row(&mut self) {
        let start = self.pos;
        let end = self.line_end();
        let line = &self.text[start..end];
        let mut pipes = Vec::new();
        let mut chars = line.char_indices();
        while let Some((i, c)) = chars.next() {
            match c {
                '\\' => {
                    chars.next();
                }
                '|' => pipes.push(start + i),
                _ => {}
            }
        }
        if pipes.len() < 2 {
            self.pos = end;
            self.error(start, end - start, "table row must start and end with `|`");
            return;
        }
        let cells = pipes
            .windows(2)
            .map(|w| RawCell { raw: self.text[w[0] + 1..w[1]].trim_end_matches('\r').to_string(), offset: w[0] + 1 })
            .collect();
        self.pos = pipes[pipes.len() - 1] + 1;
        self.push(TokenKind::PipeRow(cells), start);
    }
}

/// Escapes accepted in double-quoted strings.
pub fn unescape(c: char) -> Option<char> {
    match c {
        '"' => Some('"'),
        '\\' => Some('\\'),
        'n' => Some('\n'),
        't' => Some('\t'),
        'r' => Some('\r'),
        '|' => Some('|'),
        _ => None,
    }
}
