//! Recursive-descent parsers for `.vmdsl` descriptions and `.vmtest` suites.
//!
//! Keywords are contextual: the tokenizer only produces words, and each
//! production decides which words it treats as keywords. This keeps names
//! like `text` or `rows` usable as widget names.
//!
//! After a syntax error the parser skips to the next declaration that starts
//! a line (a widget, command or scenario) so several errors can be reported
//! from one run.

pub mod cells;
pub mod lexer;
mod suite;
mod viewmodel;

use std::path::Path;

use crate::diagnostic::{sort_diagnostics, Code, Diagnostic};
use crate::model::{Ident, Literal, Span, TestSuite, ViewModelDescription};

use lexer::{Token, TokenKind};

pub use suite::parse_test_suite;
pub use viewmodel::parse_view_model;

type PResult<T> = Result<T, ()>;

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    file: &'a Path,
    diagnostics: Vec<Diagnostic>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, file: &'a Path) -> Parser<'a> {
        let lexed = lexer::tokenize(text, file);
        Parser { tokens: lexed.tokens, pos: 0, file, diagnostics: lexed.diagnostics }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_nth(&self, n: usize) -> &Token {
        let last = self.tokens.len() - 1;
        &self.tokens[(self.pos + n).min(last)]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn at_eof(&self) -> bool {
        self.peek().kind == TokenKind::Eof
    }

    fn at(&self, kind: &TokenKind) -> bool {
        &self.peek().kind == kind
    }

    fn at_word(&self, word: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(w) if w == word)
    }

    fn word_at(&self, n: usize) -> Option<&str> {
        match &self.peek_nth(n).kind {
            TokenKind::Ident(w) => Some(w),
            _ => None,
        }
    }

    fn error_at(&mut self, span: Span, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic::error(Code::E001, self.file, span, message));
    }

    fn unexpected<T>(&mut self, what: &str) -> PResult<T> {
        let tok = self.peek().clone();
        self.error_at(tok.span, format!("expected {what}, found {}", tok.kind.describe()));
        Err(())
    }

    fn expect(&mut self, kind: TokenKind) -> PResult<Token> {
        if self.at(&kind) {
            Ok(self.bump())
        } else {
            self.unexpected(&kind.describe())
        }
    }

    fn expect_word(&mut self, word: &str) -> PResult<Span> {
        if self.at_word(word) {
            Ok(self.bump().span)
        } else {
            self.unexpected(&format!("`{word}`"))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(Ident, Span)> {
        match &self.peek().kind {
            TokenKind::Ident(w) => {
                let ident = Ident::new(w.clone()).expect("lexer produces valid identifiers");
                Ok((ident, self.bump().span))
            }
            _ => self.unexpected(what),
        }
    }

    fn string(&mut self, what: &str) -> PResult<(String, Span)> {
        match &self.peek().kind {
            TokenKind::Str(s) => {
                let s = s.clone();
                Ok((s, self.bump().span))
            }
            _ => self.unexpected(what),
        }
    }

    fn triple_string(&mut self) -> PResult<String> {
        match &self.peek().kind {
            TokenKind::TripleStr(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => self.unexpected("a triple-quoted string"),
        }
    }

    fn int(&mut self) -> PResult<(i64, Span)> {
        match self.peek().kind {
            TokenKind::Int(i) => Ok((i, self.bump().span)),
            _ => self.unexpected("an integer"),
        }
    }

    fn bool(&mut self) -> PResult<bool> {
        if self.at_word("true") {
            self.bump();
            Ok(true)
        } else if self.at_word("false") {
            self.bump();
            Ok(false)
        } else {
            self.unexpected("`true` or `false`")
        }
    }

    fn literal(&mut self) -> PResult<Literal> {
        match &self.peek().kind {
            TokenKind::Str(s) => {
                let s = s.clone();
                self.bump();
                Ok(Literal::Str(s))
            }
            TokenKind::Int(i) => {
                let i = *i;
                self.bump();
                Ok(Literal::Int(i))
            }
            TokenKind::Ident(w) if w == "true" || w == "false" => self.bool().map(Literal::Bool),
            _ => self.unexpected("a literal"),
        }
    }

    /// Span from `start` up to the end of the previous token.
    fn span_from(&self, start: Span) -> Span {
        let prev = &self.tokens[self.pos.saturating_sub(1)];
        let end = prev.span.offset + prev.span.length;
        Span { length: end.saturating_sub(start.offset), ..start }
    }

    /// Skips at least one token, then up to a line-initial token accepted by
    /// `is_sync` or the end of input.
    fn recover(&mut self, is_sync: impl Fn(&Parser<'_>) -> bool) {
        self.bump();
        while !self.at_eof() {
            if self.peek().line_start && is_sync(self) {
                return;
            }
            self.bump();
        }
    }

    fn duplicate(&mut self, span: Span, what: &str, name: &str, first: Span) {
        self.diagnostics.push(Diagnostic::error(
            Code::E106,
            self.file,
            span,
            format!("duplicate {what} `{name}` (first declared at line {})", first.line),
        ));
    }

    fn finish<T>(mut self, value: PResult<T>) -> Result<T, Vec<Diagnostic>> {
        if self.diagnostics.is_empty() {
            if let Ok(v) = value {
                return Ok(v);
            }
            // Every failing production reports before returning Err.
            let span = self.peek().span;
            self.error_at(span, "syntax error");
        }
        let mut diags = self.diagnostics;
        sort_diagnostics(&mut diags);
        diags.dedup_by(|a, b| a.code == b.code && a.span.offset == b.span.offset);
        Err(diags)
    }
}

/// Either kind of source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceFile {
    ViewModel(ViewModelDescription),
    Suite(TestSuite),
}

/// Parses by file extension: `.vmdsl` or `.vmtest`.
pub fn parse_file(text: &str, file: &Path) -> Option<Result<SourceFile, Vec<Diagnostic>>> {
    match file.extension().and_then(|e| e.to_str()) {
        Some("vmdsl") => Some(parse_view_model(text, file).map(SourceFile::ViewModel)),
        Some("vmtest") => Some(parse_test_suite(text, file).map(SourceFile::Suite)),
        _ => None,
    }
}

#[cfg(test)]
mod properties;
