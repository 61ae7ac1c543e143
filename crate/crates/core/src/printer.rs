//! Canonical text form of both DSLs.
//!
//! Two-space indentation, one declaration per line, table pipes aligned per
//! column, trailing newline. Printing a parsed file and parsing the result
//! yields an equal tree.

use std::fmt::Write;

use crate::model::{
    Action, Arg, BindingSubject, Check, CommandForm, ContextBody, ContextDefinition, Literal, TableCheck, TestScenario,
    TestSuite, ViewModelDescription, WidgetDecl, WidgetKind,
};
use crate::parser::cells::{encode_cell, encode_expectation_cell};

/// Either tree, for callers that print whatever they parsed.
pub enum Printable<'a> {
    ViewModel(&'a ViewModelDescription),
    Suite(&'a TestSuite),
}

pub fn pretty_print(ast: Printable<'_>) -> String {
    match ast {
        Printable::ViewModel(desc) => print_view_model(desc),
        Printable::Suite(suite) => print_suite(suite),
    }
}

pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn literal(lit: &Literal) -> String {
    match lit {
        Literal::Str(s) => quote(s),
        Literal::Bool(b) => b.to_string(),
        Literal::Int(i) => i.to_string(),
    }
}

struct Out {
    buf: String,
    depth: usize,
}

impl Out {
    fn line(&mut self, text: impl AsRef<str>) {
        for _ in 0..self.depth {
            self.buf.push_str("  ");
        }
        self.buf.push_str(text.as_ref());
        self.buf.push('\n');
    }

    fn open(&mut self, text: impl AsRef<str>) {
        self.line(format!("{} {{", text.as_ref()));
        self.depth += 1;
    }

    fn close(&mut self) {
        self.depth -= 1;
        self.line("}");
    }

    /// `head { }` when empty, a block otherwise.
    fn block<T>(&mut self, head: &str, items: &[T], mut each: impl FnMut(&mut Out, &T)) {
        if items.is_empty() {
            self.line(format!("{head} {{ }}"));
        } else {
            self.open(head);
            for item in items {
                each(self, item);
            }
            self.close();
        }
    }

    /// Rows of already-encoded cells, padded so the pipes line up. Each row
    /// may carry a suffix printed after the closing pipe.
    fn table(&mut self, rows: &[(Vec<String>, String)]) {
        let columns = rows.iter().map(|(cells, _)| cells.len()).max().unwrap_or(0);
        let mut widths = vec![0; columns];
        for (cells, _) in rows {
            for (i, cell) in cells.iter().enumerate() {
                widths[i] = widths[i].max(cell.chars().count());
            }
        }
        for (cells, suffix) in rows {
            let mut line = String::from("|");
            for (i, cell) in cells.iter().enumerate() {
                let pad = widths[i] - cell.chars().count();
                write!(line, " {cell}{} |", " ".repeat(pad)).unwrap();
            }
            if !suffix.is_empty() {
                line.push(' ');
                line.push_str(suffix);
            }
            self.line(line);
        }
    }
}

pub fn print_view_model(desc: &ViewModelDescription) -> String {
    let mut out = Out { buf: String::new(), depth: 0 };
    let mut head = format!("viewmodel {}", desc.name);
    if desc.bindings.is_empty() {
        out.open(head);
    } else {
        head.push_str(" bind");
        out.open(head);
        for b in &desc.bindings {
            let subject = match &b.subject {
                BindingSubject::TypeName => "typeName".to_string(),
                BindingSubject::FileName => "fileName".to_string(),
                BindingSubject::PropertyName { widget, feature } => {
                    format!("property {widget}.{feature} name")
                }
                BindingSubject::GetterName { widget, feature } => {
                    format!("property {widget}.{feature} getter")
                }
            };
            out.line(format!("{subject} = {}", quote(&b.bound)));
        }
        out.depth -= 1;
        out.open("}");
    }
    out.block("widgets", &desc.widgets, print_widget);
    out.block("commands", &desc.commands, |out, c| match &c.form {
        CommandForm::Widget { kind, target } => out.line(format!("{kind} on {target}")),
        CommandForm::Custom { params } => {
            let params: Vec<String> = params.iter().map(|p| format!("{}: {}", p.name, p.ty.keyword())).collect();
            out.line(format!("command {}({})", c.name, params.join(", ")));
        }
    });
    out.close();
    out.buf
}

fn print_widget(out: &mut Out, w: &WidgetDecl) {
    let head = format!("{} {}", w.kind, w.name);
    let supports = (!w.supports.is_empty()).then(|| {
        let names: Vec<&str> = w.supports.iter().map(|f| f.keyword()).collect();
        format!("supports {}", names.join(", "))
    });
    if w.kind == WidgetKind::Table {
        out.open(head);
        out.open("columns");
        for c in &w.columns {
            out.line(format!("{} {}", c.cell_kind.keyword(), quote(&c.title)));
        }
        out.close();
        if let Some(s) = supports {
            out.line(s);
        }
        out.close();
    } else if supports.is_none() && w.examples.is_empty() {
        out.line(head);
    } else {
        out.open(head);
        if let Some(s) = supports {
            out.line(s);
        }
        for e in &w.examples {
            out.line(format!("example {} = {}", e.feature, literal(&e.value)));
        }
        out.close();
    }
}

pub fn print_suite(suite: &TestSuite) -> String {
    let mut out = Out { buf: String::new(), depth: 0 };
    let head = format!("testsuite {} for {}", suite.name, suite.target);
    out.block(&head, &suite.scenarios, print_scenario);
    out.buf
}

fn print_scenario(out: &mut Out, s: &TestScenario) {
    out.open(format!("scenario {}", quote(&s.description)));
    out.block("given", &s.given, print_context);
    out.block("when", &s.when, |out, a| out.line(action(a)));
    out.block("then", &s.then, print_check);
    out.close();
}

fn print_context(out: &mut Out, c: &ContextDefinition) {
    match &c.body {
        ContextBody::DataTable(t) => {
            out.open(format!("datatable {}", c.name));
            let mut rows = vec![(t.header.iter().map(|h| encode_cell(h)).collect(), String::new())];
            rows.extend(t.rows.iter().map(|r| (r.iter().map(|v| encode_cell(v)).collect(), String::new())));
            out.table(&rows);
            out.close();
        }
        // Triple-quoted bodies are verbatim, so they are written without
        // indentation handling.
        ContextBody::Text(text) => out.line(format!("text {} \"\"\"{text}\"\"\"", c.name)),
        ContextBody::Xml(text) => out.line(format!("xml {} \"\"\"{text}\"\"\"", c.name)),
        ContextBody::File(path) => out.line(format!("file {} {}", c.name, quote(path))),
        ContextBody::Reference(target) if *target == c.name => out.line(format!("use {target}")),
        ContextBody::Reference(target) => out.line(format!("use {target} as {}", c.name)),
    }
}

fn action(a: &Action) -> String {
    match a {
        Action::Custom { name, args, .. } => {
            let args: Vec<String> = args
                .iter()
                .map(|arg| match arg {
                    Arg::Literal(l) => literal(l),
                    Arg::Context(c) => c.to_string(),
                })
                .collect();
            format!("{name}({})", args.join(", "))
        }
        Action::Widget { kind, target, arg, .. } => match arg {
            Some(l) => format!("{kind} {target} {}", literal(l)),
            None => format!("{kind} {target}"),
        },
    }
}

fn print_check(out: &mut Out, c: &Check) {
    match c {
        Check::Widget(w) => {
            let mut line = format!("{} {}", w.kind, w.widget);
            for f in &w.features {
                write!(line, " {} {}", f.feature, literal(&f.expected)).unwrap();
            }
            out.line(line);
        }
        Check::Table(t) => print_table_check(out, t),
    }
}

fn print_table_check(out: &mut Out, t: &TableCheck) {
    out.open(format!("table {}", t.widget));
    if !t.ignored_columns.is_empty() {
        let titles: Vec<String> = t.ignored_columns.iter().map(|c| quote(c)).collect();
        out.line(format!("ignore {}", titles.join(", ")));
    }
    out.open("rows");
    let mut rows = vec![(t.header.iter().map(|h| encode_cell(h)).collect(), String::new())];
    for r in &t.rows {
        let mut marks = Vec::new();
        if r.selected {
            marks.push("[selected]".to_string());
        }
        if let Some(color) = r.color {
            marks.push(format!("[color {color}]"));
        }
        rows.push((r.cells.iter().map(encode_expectation_cell).collect(), marks.join(" ")));
    }
    out.table(&rows);
    out.close();
    match t.selected_row {
        Some(Some(i)) => out.line(format!("selectedRow {i}")),
        Some(None) => out.line("selectedRow none"),
        None => {}
    }
    out.close();
}
