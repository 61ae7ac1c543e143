use std::collections::HashMap;
use std::path::Path;

use crate::diagnostic::Diagnostic;
use crate::model::{
    validate_identifier, BindingSubject, CellKind, ColumnSpec, CommandDecl, CommandKind, ExampleValue, FeatureKind,
    NameBinding, Param, ParamType, Span, ViewModelDescription, WidgetDecl, WidgetKind,
};

use super::lexer::TokenKind;
use super::{PResult, Parser};

/// Parses a `.vmdsl` ViewModel description.
pub fn parse_view_model(text: &str, file: &Path) -> Result<ViewModelDescription, Vec<Diagnostic>> {
    let mut p = Parser::new(text, file);
    let result = p.view_model();
    if let Ok(desc) = &result {
        check_duplicates(&mut p, desc);
    }
    p.finish(result)
}

fn starts_widget(p: &Parser<'_>) -> bool {
    p.word_at(0).is_some_and(|w| WidgetKind::from_keyword(w).is_some())
        && matches!(p.peek_nth(1).kind, TokenKind::Ident(_))
}

fn starts_command(p: &Parser<'_>) -> bool {
    match p.word_at(0) {
        Some("command") => matches!(p.peek_nth(1).kind, TokenKind::Ident(_)),
        Some(w) => CommandKind::from_keyword(w).is_some() && p.word_at(1) == Some("on"),
        None => false,
    }
}

impl Parser<'_> {
    fn view_model(&mut self) -> PResult<ViewModelDescription> {
        let start = self.expect_word("viewmodel")?;
        let (name, _) = self.ident("a ViewModel name")?;
        let bindings = if self.at_word("bind") { self.bindings()? } else { Vec::new() };
        self.expect(TokenKind::LBrace)?;

        self.expect_word("widgets")?;
        self.expect(TokenKind::LBrace)?;
        let mut widgets = Vec::new();
        let mut recovered = false;
        loop {
            if self.at(&TokenKind::RBrace) {
                self.bump();
                break;
            }
            if self.at_eof() {
                return if recovered { Err(()) } else { self.unexpected("`}`") };
            }
            if recovered && self.at_word("commands") {
                break;
            }
            match self.widget() {
                Ok(w) => widgets.push(w),
                Err(()) => {
                    recovered = true;
                    self.recover(|p| starts_widget(p) || p.at_word("commands"));
                }
            }
        }

        self.expect_word("commands")?;
        self.expect(TokenKind::LBrace)?;
        let mut commands = Vec::new();
        let mut recovered = false;
        loop {
            if self.at(&TokenKind::RBrace) {
                self.bump();
                break;
            }
            if self.at_eof() {
                return if recovered { Err(()) } else { self.unexpected("`}`") };
            }
            match self.command() {
                Ok(c) => commands.push(c),
                Err(()) => {
                    recovered = true;
                    self.recover(starts_command);
                }
            }
        }
        self.expect(TokenKind::RBrace)?;
        self.expect(TokenKind::Eof)?;
        let span = self.span_from(start);
        Ok(ViewModelDescription { name, bindings, widgets, commands, source: self.file.to_path_buf(), span })
    }

    fn bindings(&mut self) -> PResult<Vec<NameBinding>> {
        self.expect_word("bind")?;
        self.expect(TokenKind::LBrace)?;
        let mut out = Vec::new();
        while !self.at(&TokenKind::RBrace) {
            let start = self.peek().span;
            let subject = match self.word_at(0) {
                Some("typeName") => {
                    self.bump();
                    BindingSubject::TypeName
                }
                Some("fileName") => {
                    self.bump();
                    BindingSubject::FileName
                }
                Some("property") => {
                    self.bump();
                    let (widget, _) = self.ident("a widget name")?;
                    self.expect(TokenKind::Dot)?;
                    let feature = self.feature()?;
                    if self.at_word("name") {
                        self.bump();
                        BindingSubject::PropertyName { widget, feature }
                    } else if self.at_word("getter") {
                        self.bump();
                        BindingSubject::GetterName { widget, feature }
                    } else {
                        return self.unexpected("`name` or `getter`");
                    }
                }
                _ => return self.unexpected("`typeName`, `fileName`, `property` or `}`"),
            };
            self.expect(TokenKind::Eq)?;
            let (bound, bound_span) = self.string("a bound name")?;
            let valid = match subject {
                BindingSubject::FileName => validate_file_segment(&bound),
                _ => validate_identifier(&bound).map(|_| ()).map_err(|e| e.to_string()),
            };
            if let Err(message) = valid {
                self.error_at(bound_span, message);
                return Err(());
            }
            out.push(NameBinding { subject, bound, span: self.span_from(start) });
        }
        self.bump();
        Ok(out)
    }

    fn feature(&mut self) -> PResult<FeatureKind> {
        match self.word_at(0).and_then(FeatureKind::from_keyword) {
            Some(f) => {
                self.bump();
                Ok(f)
            }
            None => self.unexpected("a feature (enabled, visible, text, checked, rows, selectedRow)"),
        }
    }

    fn widget(&mut self) -> PResult<WidgetDecl> {
        let start = self.peek().span;
        let kind = match self.word_at(0).and_then(WidgetKind::from_keyword) {
            Some(k) => k,
            None => return self.unexpected("a widget declaration"),
        };
        self.bump();
        let (name, _) = self.ident("a widget name")?;
        let mut decl =
            WidgetDecl { name, kind, supports: Vec::new(), columns: Vec::new(), examples: Vec::new(), span: start };
        if kind == WidgetKind::Table {
            self.expect(TokenKind::LBrace)?;
            self.expect_word("columns")?;
            self.expect(TokenKind::LBrace)?;
            loop {
                let col_start = self.peek().span;
                let cell_kind = match self.word_at(0).and_then(CellKind::from_keyword) {
                    Some(k) => k,
                    None => return self.unexpected("a column (`label`, `image` or `checkbox`)"),
                };
                self.bump();
                let (title, _) = self.string("a column title")?;
                decl.columns.push(ColumnSpec { cell_kind, title, span: self.span_from(col_start) });
                if self.at(&TokenKind::RBrace) {
                    self.bump();
                    break;
                }
            }
            while self.at_word("supports") {
                self.supports(&mut decl.supports)?;
            }
            self.expect(TokenKind::RBrace)?;
        } else if self.at(&TokenKind::LBrace) {
            self.bump();
            while !self.at(&TokenKind::RBrace) {
                if self.at_word("supports") {
                    self.supports(&mut decl.supports)?;
                } else if self.at_word("example") {
                    let ex_start = self.bump().span;
                    let feature = self.feature()?;
                    self.expect(TokenKind::Eq)?;
                    let value = self.literal()?;
                    decl.examples.push(ExampleValue { feature, value, span: self.span_from(ex_start) });
                } else {
                    return self.unexpected("`supports`, `example` or `}`");
                }
            }
            self.bump();
        }
        decl.span = self.span_from(start);
        Ok(decl)
    }

    fn supports(&mut self, into: &mut Vec<FeatureKind>) -> PResult<()> {
        self.expect_word("supports")?;
        into.push(self.feature()?);
        while self.at(&TokenKind::Comma) {
            self.bump();
            into.push(self.feature()?);
        }
        Ok(())
    }

    fn command(&mut self) -> PResult<CommandDecl> {
        let start = self.peek().span;
        if self.at_word("command") {
            self.bump();
            let (name, _) = self.ident("a command name")?;
            self.expect(TokenKind::LParen)?;
            let mut params = Vec::new();
            if !self.at(&TokenKind::RParen) {
                loop {
                    let (pname, pspan) = self.ident("a parameter name")?;
                    self.expect(TokenKind::Colon)?;
                    let ty = match self.word_at(0).and_then(ParamType::from_keyword) {
                        Some(t) => t,
                        None => return self.unexpected("a parameter type (string, bool, int, context)"),
                    };
                    self.bump();
                    params.push(Param { name: pname, ty, span: self.span_from(pspan) });
                    if !self.at(&TokenKind::Comma) {
                        break;
                    }
                    self.bump();
                }
            }
            self.expect(TokenKind::RParen)?;
            return Ok(CommandDecl::custom(name, params, self.span_from(start)));
        }
        let kind = match self.word_at(0).and_then(CommandKind::from_keyword) {
            Some(k) => k,
            None => return self.unexpected("a command declaration"),
        };
        self.bump();
        self.expect_word("on")?;
        let (target, _) = self.ident("a widget name")?;
        Ok(CommandDecl::widget(kind, target, self.span_from(start)))
    }
}

fn validate_file_segment(name: &str) -> Result<(), String> {
    let ok = !name.is_empty()
        && name != "."
        && name != ".."
        && name.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'));
    if ok {
        Ok(())
    } else {
        Err(format!("`{name}` is not a valid file name segment"))
    }
}

fn check_duplicates(p: &mut Parser<'_>, desc: &ViewModelDescription) {
    let mut seen: HashMap<&str, Span> = HashMap::new();
    for w in &desc.widgets {
        if let Some(first) = seen.insert(w.name.as_str(), w.span) {
            p.duplicate(w.span, "widget", w.name.as_str(), first);
        }
    }
    let mut seen: HashMap<&str, Span> = HashMap::new();
    for c in &desc.commands {
        if let Some(first) = seen.insert(c.name.as_str(), c.span) {
            p.duplicate(c.span, "command", c.name.as_str(), first);
        }
    }
    let mut seen: HashMap<&BindingSubject, Span> = HashMap::new();
    for b in &desc.bindings {
        if let Some(first) = seen.insert(&b.subject, b.span) {
            p.duplicate(b.span, "binding for", &b.subject.to_string(), first);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostic::Code;
    use crate::model::Literal;

    fn parse(text: &str) -> Result<ViewModelDescription, Vec<Diagnostic>> {
        parse_view_model(text, Path::new("t.vmdsl"))
    }

    #[test]
    fn empty_blocks() {
        let desc = parse("viewmodel Empty { widgets { } commands { } }").unwrap();
        assert_eq!(desc.name, "Empty");
        assert!(desc.widgets.is_empty());
        assert!(desc.commands.is_empty());
    }

    #[test]
    fn widgets_commands_and_bindings() {
        let desc = parse(
            r#"viewmodel Form bind {
                 typeName = "FormVM"
                 property Name.text getter = "fetchName"
               } {
                 widgets {
                   textfield Name { supports enabled, visible example text = "Bob" }
                   checkbox Agree
                   table Items { columns { label "A" image "B" } supports selectedRow }
                 }
                 commands {
                   fillText on Name
                   check on Agree
                   command Save(force: bool, note: string)
                 }
               }"#,
        )
        .unwrap();
        assert_eq!(desc.widgets.len(), 3);
        assert_eq!(desc.widgets[0].supports, vec![FeatureKind::Enabled, FeatureKind::Visible]);
        assert_eq!(desc.widgets[0].example(FeatureKind::Text), Some(&Literal::Str("Bob".into())));
        assert_eq!(desc.widgets[2].columns[1].cell_kind, CellKind::Image);
        let names: Vec<&str> = desc.commands.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, vec!["NameFillText", "AgreeCheck", "Save"]);
        assert_eq!(desc.bindings.len(), 2);
        assert_eq!(desc.bindings[0].bound, "FormVM");
    }

    #[test]
    fn duplicate_widget_reported_at_second() {
        let diags = parse("viewmodel V {\n  widgets {\n    button X\n    label X\n  }\n  commands { }\n}").unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, Code::E106);
        assert_eq!(diags[0].span.line, 4);
    }

    #[test]
    fn recovers_to_report_several_errors() {
        let diags = parse(
            "viewmodel V {\n  widgets {\n    button A { supports wobbly }\n    button B\n    slider C\n  }\n  commands {\n    click on B\n    tap on A\n  }\n}",
        )
        .unwrap_err();
        let lines: Vec<usize> = diags.iter().map(|d| d.span.line).collect();
        assert!(diags.iter().all(|d| d.code == Code::E001), "{diags:?}");
        assert_eq!(lines, vec![3, 5, 9]);
    }

    #[test]
    fn bad_binding_names() {
        let diags = parse(r#"viewmodel V bind { typeName = "2x" } { widgets { } commands { } }"#).unwrap_err();
        assert_eq!(diags[0].code, Code::E001);
        let diags = parse(r#"viewmodel V bind { fileName = "a/b" } { widgets { } commands { } }"#).unwrap_err();
        assert_eq!(diags[0].code, Code::E001);
    }

    #[test]
    fn table_requires_columns() {
        let diags = parse("viewmodel V { widgets { table T { columns { } } } commands { } }").unwrap_err();
        assert_eq!(diags[0].code, Code::E001);
    }
}
