use std::collections::{HashMap, HashSet};
use std::path::Path;

use crate::diagnostic::{Code, Diagnostic};
use crate::model::{
    Action, Arg, Check, Color, CommandKind, ContextBody, ContextDefinition, DataTable, FeatureCheck, FeatureKind,
    Literal, RowExpectation, Span, TableCheck, TestScenario, TestSuite, WidgetCheck, WidgetKind,
};

use super::cells::{decode_cell, parse_expectation_cell};
use super::lexer::{RawCell, TokenKind};
use super::{PResult, Parser};

/// Parses a `.vmtest` test suite.
pub fn parse_test_suite(text: &str, file: &Path) -> Result<TestSuite, Vec<Diagnostic>> {
    let mut p = Parser::new(text, file);
    let result = p.suite();
    if let Ok(suite) = &result {
        let mut seen: HashMap<&str, Span> = HashMap::new();
        for s in &suite.scenarios {
            if let Some(first) = seen.insert(s.description.as_str(), s.span) {
                p.duplicate(s.span, "scenario", &s.description, first);
            }
        }
    }
    p.finish(result)
}

fn starts_scenario(p: &Parser<'_>) -> bool {
    p.at_word("scenario") && matches!(p.peek_nth(1).kind, TokenKind::Str(_))
}

impl Parser<'_> {
    fn suite(&mut self) -> PResult<TestSuite> {
        let start = self.expect_word("testsuite")?;
        let (name, _) = self.ident("a suite name")?;
        self.expect_word("for")?;
        let (target, _) = self.ident("a ViewModel name")?;
        self.expect(TokenKind::LBrace)?;
        let mut scenarios = Vec::new();
        let mut recovered = false;
        loop {
            if self.at(&TokenKind::RBrace) {
                self.bump();
                break;
            }
            if self.at_eof() {
                return if recovered { Err(()) } else { self.unexpected("`}`") };
            }
            match self.scenario() {
                Ok(s) => scenarios.push(s),
                Err(()) => {
                    recovered = true;
                    self.recover(starts_scenario);
                }
            }
        }
        self.expect(TokenKind::Eof)?;
        Ok(TestSuite { name, target, scenarios, source: self.file.to_path_buf(), span: self.span_from(start) })
    }

    fn scenario(&mut self) -> PResult<TestScenario> {
        let start = self.expect_word("scenario")?;
        let (description, _) = self.string("a scenario description")?;
        self.expect(TokenKind::LBrace)?;

        self.expect_word("given")?;
        self.expect(TokenKind::LBrace)?;
        let mut given = Vec::new();
        while !self.at(&TokenKind::RBrace) {
            given.push(self.context()?);
        }
        self.bump();

        self.expect_word("when")?;
        self.expect(TokenKind::LBrace)?;
        let mut when = Vec::new();
        while !self.at(&TokenKind::RBrace) {
            when.push(self.action()?);
        }
        self.bump();

        self.expect_word("then")?;
        self.expect(TokenKind::LBrace)?;
        let mut then = Vec::new();
        while !self.at(&TokenKind::RBrace) {
            then.push(self.check()?);
        }
        self.bump();

        self.expect(TokenKind::RBrace)?;
        Ok(TestScenario { description, given, when, then, span: self.span_from(start) })
    }

    fn context(&mut self) -> PResult<ContextDefinition> {
        let start = self.peek().span;
        let keyword = match self.word_at(0) {
            Some(w @ ("datatable" | "text" | "xml" | "file" | "use")) => w.to_string(),
            _ => return self.unexpected("a context (`datatable`, `text`, `xml`, `file`, `use`) or `}`"),
        };
        self.bump();
        let (name, _) = self.ident("a context name")?;
        let (name, body) = match keyword.as_str() {
            "datatable" => {
                self.expect(TokenKind::LBrace)?;
                let table = self.data_table()?;
                self.expect(TokenKind::RBrace)?;
                (name, ContextBody::DataTable(table))
            }
            "text" => (name, ContextBody::Text(self.triple_string()?)),
            "xml" => (name, ContextBody::Xml(self.triple_string()?)),
            "file" => (name, ContextBody::File(self.string("a file path")?.0)),
            _ => {
                if self.at_word("as") {
                    self.bump();
                    let (alias, _) = self.ident("an alias")?;
                    (alias, ContextBody::Reference(name))
                } else {
                    (name.clone(), ContextBody::Reference(name))
                }
            }
        };
        Ok(ContextDefinition { name, body, span: self.span_from(start) })
    }

    fn pipe_row(&mut self, what: &str) -> PResult<(Vec<RawCell>, Span)> {
        match &self.peek().kind {
            TokenKind::PipeRow(cells) => {
                let cells = cells.clone();
                Ok((cells, self.bump().span))
            }
            _ => self.unexpected(what),
        }
    }

    fn header(&mut self) -> PResult<(Vec<String>, Span)> {
        let (cells, span) = self.pipe_row("a header row")?;
        let header: Vec<String> = cells.iter().map(|c| decode_cell(&c.raw)).collect();
        let mut seen = HashSet::new();
        for (title, cell) in header.iter().zip(&cells) {
            if !seen.insert(title.as_str()) {
                let at = self.cell_span(span, cell);
                self.diagnostics.push(Diagnostic::error(
                    Code::E106,
                    self.file,
                    at,
                    format!("duplicate column title `{title}`"),
                ));
            }
        }
        Ok((header, span))
    }

    fn cell_span(&self, row: Span, cell: &RawCell) -> Span {
        let column = row.column + (cell.offset - row.offset);
        Span::new(cell.offset, row.line, column, cell.raw.len())
    }

    fn ragged(&mut self, span: Span, expected: usize, found: usize) {
        self.diagnostics.push(Diagnostic::error(
            Code::E108,
            self.file,
            span,
            format!("row has {found} cells but the header has {expected}"),
        ));
    }

    fn data_table(&mut self) -> PResult<DataTable> {
        let (header, _) = self.header()?;
        let mut rows = Vec::new();
        while let TokenKind::PipeRow(_) = self.peek().kind {
            let (cells, span) = self.pipe_row("a table row")?;
            if cells.len() != header.len() {
                self.ragged(span, header.len(), cells.len());
            }
            rows.push(cells.iter().map(|c| decode_cell(&c.raw)).collect());
        }
        Ok(DataTable { header, rows })
    }

    fn action(&mut self) -> PResult<Action> {
        let start = self.peek().span;
        if matches!(self.peek().kind, TokenKind::Ident(_)) && self.peek_nth(1).kind == TokenKind::LParen {
            let (name, _) = self.ident("a command name")?;
            self.bump();
            let mut args = Vec::new();
            if !self.at(&TokenKind::RParen) {
                loop {
                    args.push(self.arg()?);
                    if !self.at(&TokenKind::Comma) {
                        break;
                    }
                    self.bump();
                }
            }
            self.expect(TokenKind::RParen)?;
            return Ok(Action::Custom { name, args, span: self.span_from(start) });
        }
        let kind = match self.word_at(0).and_then(CommandKind::from_keyword) {
            Some(k) => k,
            None => return self.unexpected("a command action or `}`"),
        };
        self.bump();
        let (target, _) = self.ident("a widget name")?;
        let arg = match kind {
            CommandKind::Click => None,
            CommandKind::Check => Some(Literal::Bool(self.bool()?)),
            CommandKind::FillText => Some(Literal::Str(self.string("a string")?.0)),
            CommandKind::SelectRow => Some(Literal::Int(self.int()?.0)),
        };
        Ok(Action::Widget { kind, target, arg, span: self.span_from(start) })
    }

    fn arg(&mut self) -> PResult<Arg> {
        match &self.peek().kind {
            TokenKind::Ident(w) if w != "true" && w != "false" => Ok(Arg::Context(self.ident("an argument")?.0)),
            _ => self.literal().map(Arg::Literal),
        }
    }

    fn check(&mut self) -> PResult<Check> {
        let start = self.peek().span;
        let kind = match self.word_at(0).and_then(WidgetKind::from_keyword) {
            Some(k) => k,
            None => return self.unexpected("a widget check or `}`"),
        };
        self.bump();
        let (widget, _) = self.ident("a widget name")?;
        if kind == WidgetKind::Table {
            return self.table_check(widget, start).map(Check::Table);
        }
        let mut features = Vec::new();
        loop {
            let fstart = self.peek().span;
            let feature = match self.word_at(0) {
                Some("enabled") => FeatureKind::Enabled,
                Some("visible") => FeatureKind::Visible,
                Some("checked") => FeatureKind::Checked,
                Some("text") => FeatureKind::Text,
                _ if features.is_empty() => {
                    return self.unexpected("a feature check (enabled, visible, checked, text)")
                }
                _ => break,
            };
            self.bump();
            let expected = if feature == FeatureKind::Text {
                Literal::Str(self.string("a string")?.0)
            } else {
                Literal::Bool(self.bool()?)
            };
            features.push(FeatureCheck { feature, expected, span: self.span_from(fstart) });
        }
        Ok(Check::Widget(WidgetCheck { kind, widget, features, span: self.span_from(start) }))
    }

    fn table_check(&mut self, widget: crate::model::Ident, start: Span) -> PResult<TableCheck> {
        self.expect(TokenKind::LBrace)?;
        let mut ignored_columns = Vec::new();
        if self.at_word("ignore") {
            self.bump();
            ignored_columns.push(self.string("a column title")?.0);
            while self.at(&TokenKind::Comma) {
                self.bump();
                ignored_columns.push(self.string("a column title")?.0);
            }
        }
        self.expect_word("rows")?;
        self.expect(TokenKind::LBrace)?;
        let (header, _) = self.header()?;
        let mut rows = Vec::new();
        while let TokenKind::PipeRow(_) = self.peek().kind {
            rows.push(self.expect_row(header.len())?);
        }
        self.expect(TokenKind::RBrace)?;
        let mut selected_row = None;
        if self.at_word("selectedRow") {
            self.bump();
            if self.at_word("none") {
                self.bump();
                selected_row = Some(None);
            } else {
                let (i, span) = self.int()?;
                match usize::try_from(i) {
                    Ok(i) => selected_row = Some(Some(i)),
                    Err(_) => {
                        self.error_at(span, "row index must not be negative");
                        return Err(());
                    }
                }
            }
        }
        self.expect(TokenKind::RBrace)?;
        Ok(TableCheck { widget, ignored_columns, header, rows, selected_row, span: self.span_from(start) })
    }

    fn expect_row(&mut self, arity: usize) -> PResult<RowExpectation> {
        let (raw_cells, span) = self.pipe_row("a table row")?;
        if raw_cells.len() != arity {
            self.ragged(span, arity, raw_cells.len());
        }
        let mut cells = Vec::with_capacity(raw_cells.len());
        for raw in &raw_cells {
            match parse_expectation_cell(&raw.raw) {
                Ok(cell) => cells.push(cell),
                Err(e) => {
                    let cell_span = self.cell_span(span, raw);
                    let at = Span::new(
                        cell_span.offset + e.at,
                        cell_span.line,
                        cell_span.column + raw.raw[..e.at].chars().count(),
                        0,
                    );
                    self.error_at(at, e.message);
                    return Err(());
                }
            }
        }
        let mut row = RowExpectation { cells, selected: false, color: None, span };
        while self.at(&TokenKind::LBracket) && !self.peek().line_start {
            self.bump();
            let mark_span = self.peek().span;
            if self.at_word("selected") {
                self.bump();
                if row.selected {
                    self.error_at(mark_span, "duplicate `[selected]` mark");
                    return Err(());
                }
                row.selected = true;
            } else if self.at_word("color") {
                self.bump();
                let name_span = self.peek().span;
                let color = match self.word_at(0).and_then(Color::from_name) {
                    Some(c) => c,
                    None => return self.unexpected("a color (red, green, yellow, blue, gray, none)"),
                };
                self.bump();
                if row.color.is_some() {
                    self.error_at(name_span, "duplicate row color");
                    return Err(());
                }
                row.color = Some(color);
            } else {
                return self.unexpected("`selected` or `color`");
            }
            self.expect(TokenKind::RBracket)?;
        }
        row.span = self.span_from(span);
        Ok(row)
    }
}
