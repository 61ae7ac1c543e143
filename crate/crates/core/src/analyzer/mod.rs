//! Links a [`TestSuite`] against its [`ViewModelDescription`].
//!
//! Analysis is all-or-nothing per suite: every diagnostic is collected, and
//! a [`LinkedSuite`] is only produced when there are none.

mod names;

use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::Serialize;

use crate::diagnostic::{sort_diagnostics, Code, Diagnostic};
use crate::model::{
    catalog_lookup, Action, Arg, BindingSubject, Check, CommandForm, CommandKind, ContextBody, DataTable, FeatureKind,
    Ident, Literal, ParamType, RowExpectation, Span, TableCheck, TestScenario, TestSuite, ValueType,
    ViewModelDescription, WidgetKind,
};

pub use names::{
    camel_case, compute_name_map, pascal_case, snake_case, test_name, CommandNames, NameMap, PropertyNames,
};

/// A context body with every reference chased.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolvedBody {
    DataTable(DataTable),
    Text(String),
    Xml(String),
    File(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedContext {
    pub name: Ident,
    pub body: ResolvedBody,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkedArg {
    Literal(Literal),
    Context(ResolvedContext),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkedAction {
    Widget { command: Ident, kind: CommandKind, target: Ident, arg: Option<Literal> },
    Custom { command: Ident, args: Vec<LinkedArg> },
}

impl LinkedAction {
    pub fn command(&self) -> &Ident {
        match self {
            LinkedAction::Widget { command, .. } | LinkedAction::Custom { command, .. } => command,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedColumn {
    pub title: String,
    /// Index into the widget's declared columns.
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowsExpectation {
    /// Asserted columns, in the order the expectation lists them.
    pub columns: Vec<ExpectedColumn>,
    pub ignored_columns: Vec<String>,
    pub rows: Vec<RowExpectation>,
}

impl RowsExpectation {
    /// The same expectation with one more column ignored.
    pub fn with_ignored_column(&self, title: &str) -> RowsExpectation {
        let Some(pos) = self.columns.iter().position(|c| c.title == title) else {
            return self.clone();
        };
        let mut out = self.clone();
        out.columns.remove(pos);
        out.ignored_columns.push(title.to_string());
        for row in &mut out.rows {
            if pos < row.cells.len() {
                row.cells.remove(pos);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    Bool(bool),
    Text(String),
    SelectedRow(Option<usize>),
    Rows(RowsExpectation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckValue {
    pub widget: Ident,
    pub feature: FeatureKind,
    pub expectation: Expectation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkedScenario {
    pub description: String,
    pub test_name: String,
    pub contexts: Vec<ResolvedContext>,
    pub actions: Vec<LinkedAction>,
    pub checks: Vec<CheckValue>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkedSuite {
    pub suite: TestSuite,
    pub description: ViewModelDescription,
    pub scenarios: Vec<LinkedScenario>,
}

impl LinkedSuite {
    pub fn name(&self) -> &str {
        self.suite.name.as_str()
    }

    /// Directory that relative `file` contexts are resolved against.
    pub fn base_dir(&self) -> &Path {
        self.suite.source.parent().unwrap_or(Path::new(""))
    }
}

struct Sink<'a> {
    file: &'a Path,
    diags: Vec<Diagnostic>,
}

impl Sink<'_> {
    fn push(&mut self, code: Code, span: Span, message: impl Into<String>) {
        self.diags.push(Diagnostic::error(code, self.file, span, message));
    }
}

/// Catalog and typing rules for a description on its own.
pub fn check_description(desc: &ViewModelDescription) -> Vec<Diagnostic> {
    let mut sink = Sink { file: &desc.source, diags: Vec::new() };
    for w in &desc.widgets {
        let entry = catalog_lookup(w.kind);
        let mut seen = HashSet::new();
        for f in &w.supports {
            if !seen.insert(*f) {
                sink.push(Code::E106, w.span, format!("`{}` supports `{f}` twice", w.name));
            } else if entry.is_inherent(*f) {
                sink.push(
                    Code::E102,
                    w.span,
                    format!("`{f}` is inherent on {} widgets and cannot be listed in `supports`", w.kind),
                );
            } else if !entry.is_optional(*f) {
                sink.push(Code::E102, w.span, format!("{} widgets do not support `{f}`", w.kind));
            }
        }
        let mut seen = HashSet::new();
        for e in &w.examples {
            if !seen.insert(e.feature) {
                sink.push(Code::E106, e.span, format!("second example for `{}`", e.feature));
            } else if !w.has_feature(e.feature) {
                sink.push(Code::E102, e.span, format!("`{}` has no `{}` feature", w.name, e.feature));
            } else if e.feature == FeatureKind::SelectedRow {
                sink.push(Code::E105, e.span, "tables start without rows, so no selection example is valid");
            } else if !literal_fits(&e.value, e.feature.value_type()) {
                sink.push(
                    Code::E105,
                    e.span,
                    format!("example for `{}` must be {}", e.feature, type_word(e.feature.value_type())),
                );
            }
        }
        let mut seen = HashSet::new();
        for c in &w.columns {
            if !seen.insert(c.title.trim()) {
                sink.push(Code::E106, c.span, format!("duplicate column title `{}`", c.title.trim()));
            }
        }
    }
    for c in &desc.commands {
        match &c.form {
            CommandForm::Widget { kind, target } => match desc.widget(target.as_str()) {
                None => sink.push(Code::E101, c.span, format!("unknown widget `{target}`")),
                Some(w) if !catalog_lookup(w.kind).supports_command(*kind) => {
                    sink.push(Code::E103, c.span, format!("{} widgets have no `{kind}` command", w.kind))
                }
                Some(_) => {}
            },
            CommandForm::Custom { params } => {
                let mut seen = HashSet::new();
                for p in params {
                    if !seen.insert(p.name.as_str()) {
                        sink.push(Code::E106, p.span, format!("duplicate parameter `{}`", p.name));
                    }
                }
            }
        }
    }
    for b in &desc.bindings {
        if let BindingSubject::PropertyName { widget, feature } | BindingSubject::GetterName { widget, feature } =
            &b.subject
        {
            match desc.widget(widget.as_str()) {
                None => sink.push(Code::E101, b.span, format!("unknown widget `{widget}`")),
                Some(w) if !w.has_feature(*feature) => {
                    sink.push(Code::E102, b.span, format!("`{widget}` has no `{feature}` feature"))
                }
                Some(_) => {}
            }
        }
    }
    sort_diagnostics(&mut sink.diags);
    sink.diags
}

fn literal_fits(lit: &Literal, ty: ValueType) -> bool {
    matches!((lit, ty), (Literal::Bool(_), ValueType::Bool) | (Literal::Str(_), ValueType::String))
}

fn type_word(ty: ValueType) -> &'static str {
    match ty {
        ValueType::Bool => "a bool",
        ValueType::String => "a string",
        ValueType::Rows => "table rows",
        ValueType::OptionalIndex => "a row index",
    }
}

/// Suite-wide context names: every definition except plain `use X`.
struct ContextSpace<'s> {
    defs: HashMap<&'s str, (&'s ContextBody, Span)>,
}

#[derive(Debug, PartialEq, Eq)]
enum ChaseError {
    Missing(String),
    Cycle(Vec<String>),
}

impl<'s> ContextSpace<'s> {
    fn build(suite: &'s TestSuite, sink: &mut Sink<'_>) -> ContextSpace<'s> {
        let mut defs: HashMap<&str, (&ContextBody, Span)> = HashMap::new();
        for s in &suite.scenarios {
            for c in s.given.iter().filter(|c| !c.is_plain_use()) {
                if let ContextBody::DataTable(t) = &c.body {
                    check_header(t, c.span, sink);
                }
                if let Some((_, first)) = defs.get(c.name.as_str()) {
                    sink.push(
                        Code::E106,
                        c.span,
                        format!("context `{}` is already defined at line {}", c.name, first.line),
                    );
                } else {
                    defs.insert(c.name.as_str(), (&c.body, c.span));
                }
            }
        }
        ContextSpace { defs }
    }

    /// Follows references from the suite-level name `start`.
    fn chase(&self, start: &str) -> Result<ResolvedBody, ChaseError> {
        let mut path = vec![start.to_string()];
        let mut current = start;
        loop {
            let Some((body, _)) = self.defs.get(current) else {
                return Err(ChaseError::Missing(current.to_string()));
            };
            match body {
                ContextBody::Reference(next) => {
                    if let Some(pos) = path.iter().position(|p| p == next.as_str()) {
                        let mut cycle = path[pos..].to_vec();
                        cycle.push(next.to_string());
                        return Err(ChaseError::Cycle(cycle));
                    }
                    path.push(next.to_string());
                    current = next.as_str();
                }
                ContextBody::DataTable(t) => return Ok(ResolvedBody::DataTable(t.clone())),
                ContextBody::Text(t) => return Ok(ResolvedBody::Text(t.clone())),
                ContextBody::Xml(t) => return Ok(ResolvedBody::Xml(t.clone())),
                ContextBody::File(p) => return Ok(ResolvedBody::File(p.clone())),
            }
        }
    }
}

/// Titles must stay distinct as XML attribute names so every rendering
/// keys each column uniquely.
fn check_header(t: &DataTable, span: Span, sink: &mut Sink<'_>) {
    let mut seen = HashMap::new();
    for title in &t.header {
        let name = crate::runtime::xml_attribute_name(title);
        if let Some(first) = seen.insert(name.clone(), title) {
            if first != title {
                sink.push(
                    Code::E106,
                    span,
                    format!("columns `{first}` and `{title}` both render as XML attribute `{name}`"),
                );
            }
        }
    }
}

fn report_chase(sink: &mut Sink<'_>, span: Span, err: ChaseError) {
    match err {
        ChaseError::Missing(name) => sink.push(Code::E107, span, format!("no context named `{name}` in this suite")),
        ChaseError::Cycle(path) => {
            sink.push(Code::E109, span, format!("context references form a cycle: {}", path.join(" -> ")))
        }
    }
}

/// Resolves every reference in `suite` against `desc`.
pub fn resolve(suite: &TestSuite, desc: &ViewModelDescription) -> Result<LinkedSuite, Vec<Diagnostic>> {
    let mut diags = check_description(desc);
    let mut sink = Sink { file: &suite.source, diags: Vec::new() };
    if suite.target != desc.name {
        sink.push(
            Code::E101,
            suite.span,
            format!("suite targets `{}`, but the description is `{}`", suite.target, desc.name),
        );
    }
    let space = ContextSpace::build(suite, &mut sink);
    let mut scenarios = Vec::new();
    let mut test_names: HashMap<String, Span> = HashMap::new();
    for s in &suite.scenarios {
        let linked = resolve_scenario(s, desc, &space, &mut sink);
        if let Some(first) = test_names.insert(linked.test_name.clone(), s.span) {
            sink.push(
                Code::E106,
                s.span,
                format!("test name `{}` collides with the scenario at line {}", linked.test_name, first.line),
            );
        }
        scenarios.push(linked);
    }
    diags.extend(sink.diags);
    if diags.is_empty() {
        Ok(LinkedSuite { suite: suite.clone(), description: desc.clone(), scenarios })
    } else {
        sort_diagnostics(&mut diags);
        Err(diags)
    }
}

fn resolve_scenario(
    s: &TestScenario,
    desc: &ViewModelDescription,
    space: &ContextSpace<'_>,
    sink: &mut Sink<'_>,
) -> LinkedScenario {
    let mut contexts: Vec<ResolvedContext> = Vec::new();
    let mut local: HashSet<&str> = HashSet::new();
    for c in &s.given {
        if !local.insert(c.name.as_str()) {
            sink.push(Code::E106, c.span, format!("context `{}` appears twice in this scenario", c.name));
            continue;
        }
        // Plain `use X` imports X; definitions resolve through their own name.
        let start = match &c.body {
            ContextBody::Reference(target) => target.as_str(),
            _ => c.name.as_str(),
        };
        match space.chase(start) {
            Ok(body) => contexts.push(ResolvedContext { name: c.name.clone(), body }),
            Err(e) => report_chase(sink, c.span, e),
        }
    }

    let actions = s.when.iter().filter_map(|a| resolve_action(a, desc, &contexts, space, sink)).collect();

    let mut checks: Vec<CheckValue> = Vec::new();
    let mut asserted: HashMap<(String, FeatureKind), ()> = HashMap::new();
    let mut add = |check: CheckValue, span: Span, sink: &mut Sink<'_>| {
        let key = (check.widget.to_string(), check.feature);
        if asserted.insert(key, ()).is_some() {
            sink.push(
                Code::E106,
                span,
                format!("`{}.{}` is asserted twice in this scenario", check.widget, check.feature),
            );
        } else {
            checks.push(check);
        }
    };
    for c in &s.then {
        match c {
            Check::Widget(wc) => {
                let Some(w) = widget_of_kind(desc, wc.kind, &wc.widget, wc.span, sink) else { continue };
                for f in &wc.features {
                    if !w.has_feature(f.feature) {
                        sink.push(Code::E102, f.span, format!("`{}` has no `{}` feature", w.name, f.feature));
                        continue;
                    }
                    let expectation = match &f.expected {
                        Literal::Bool(b) => Expectation::Bool(*b),
                        Literal::Str(t) => Expectation::Text(t.clone()),
                        Literal::Int(_) => unreachable!("feature checks carry bools or strings"),
                    };
                    add(CheckValue { widget: w.name.clone(), feature: f.feature, expectation }, f.span, sink);
                }
            }
            Check::Table(tc) => {
                for (check, span) in resolve_table_check(tc, desc, sink) {
                    add(check, span, sink);
                }
            }
        }
    }

    LinkedScenario {
        description: s.description.clone(),
        test_name: test_name(&s.description),
        contexts,
        actions,
        checks,
    }
}

fn widget_of_kind<'d>(
    desc: &'d ViewModelDescription,
    kind: WidgetKind,
    name: &Ident,
    span: Span,
    sink: &mut Sink<'_>,
) -> Option<&'d crate::model::WidgetDecl> {
    match desc.widget(name.as_str()) {
        None => {
            sink.push(Code::E101, span, format!("unknown widget `{name}`"));
            None
        }
        Some(w) if w.kind != kind => {
            sink.push(Code::E101, span, format!("no {kind} named `{name}` (`{name}` is a {})", w.kind));
            None
        }
        Some(w) => Some(w),
    }
}

fn resolve_action(
    a: &Action,
    desc: &ViewModelDescription,
    contexts: &[ResolvedContext],
    space: &ContextSpace<'_>,
    sink: &mut Sink<'_>,
) -> Option<LinkedAction> {
    match a {
        Action::Widget { kind, target, arg, span } => {
            let Some(w) = desc.widget(target.as_str()) else {
                sink.push(Code::E101, *span, format!("unknown widget `{target}`"));
                return None;
            };
            let Some(cmd) = desc.widget_command(*kind, target.as_str()) else {
                sink.push(Code::E103, *span, format!("no `{kind}` command is declared on {} `{}`", w.kind, w.name));
                return None;
            };
            match (kind.parameter(), arg) {
                (None, None) => {}
                (None, Some(_)) | (Some(_), None) => {
                    let want = usize::from(kind.parameter().is_some());
                    sink.push(Code::E104, *span, format!("`{kind}` takes {want} argument(s)"));
                    return None;
                }
                (Some((pname, ty)), Some(lit)) => {
                    let fits = matches!(
                        (ty, lit),
                        (ParamType::Bool, Literal::Bool(_))
                            | (ParamType::String, Literal::Str(_))
                            | (ParamType::Int, Literal::Int(0..))
                    );
                    if !fits {
                        let want = if ty == ParamType::Int { "a row index" } else { ty.keyword() };
                        sink.push(Code::E105, *span, format!("`{kind}` expects {want} for `{pname}`"));
                        return None;
                    }
                }
            }
            Some(LinkedAction::Widget {
                command: cmd.name.clone(),
                kind: *kind,
                target: target.clone(),
                arg: arg.clone(),
            })
        }
        Action::Custom { name, args, span } => {
            let Some(cmd) = desc.command(name.as_str()).filter(|c| c.is_custom()) else {
                sink.push(Code::E103, *span, format!("unknown command `{name}`"));
                return None;
            };
            let params = cmd.parameters();
            if params.len() != args.len() {
                sink.push(
                    Code::E104,
                    *span,
                    format!("`{name}` takes {} argument(s), {} given", params.len(), args.len()),
                );
                return None;
            }
            let mut linked = Vec::new();
            let mut ok = true;
            for ((pname, ty), arg) in params.iter().zip(args) {
                let fits = match (ty, arg) {
                    (ParamType::Context, Arg::Context(c)) => {
                        let found = contexts.iter().find(|r| r.name == *c).cloned().map(Ok).unwrap_or_else(|| {
                            space.chase(c.as_str()).map(|body| ResolvedContext { name: c.clone(), body })
                        });
                        match found {
                            Ok(ctx) => linked.push(LinkedArg::Context(ctx)),
                            Err(e) => {
                                report_chase(sink, *span, e);
                                ok = false;
                            }
                        }
                        true
                    }
                    (ParamType::String, Arg::Literal(l @ Literal::Str(_)))
                    | (ParamType::Bool, Arg::Literal(l @ Literal::Bool(_)))
                    | (ParamType::Int, Arg::Literal(l @ Literal::Int(_))) => {
                        linked.push(LinkedArg::Literal(l.clone()));
                        true
                    }
                    _ => false,
                };
                if !fits {
                    let given = match arg {
                        Arg::Literal(l) => l.type_name().to_string(),
                        Arg::Context(c) => format!("context `{c}`"),
                    };
                    sink.push(
                        Code::E105,
                        *span,
                        format!("parameter `{pname}` of `{name}` expects {}, found {given}", ty.keyword()),
                    );
                    ok = false;
                }
            }
            ok.then(|| LinkedAction::Custom { command: cmd.name.clone(), args: linked })
        }
    }
}

fn resolve_table_check(tc: &TableCheck, desc: &ViewModelDescription, sink: &mut Sink<'_>) -> Vec<(CheckValue, Span)> {
    let Some(w) = widget_of_kind(desc, WidgetKind::Table, &tc.widget, tc.span, sink) else {
        return Vec::new();
    };
    let mut ok = true;
    let mut ignored = HashSet::new();
    for title in &tc.ignored_columns {
        if w.column_index(title).is_none() {
            sink.push(Code::E110, tc.span, format!("`{}` has no column `{title}`", w.name));
            ok = false;
        } else if !ignored.insert(title.trim()) {
            sink.push(Code::E106, tc.span, format!("column `{title}` is ignored twice"));
            ok = false;
        }
    }
    let mut columns = Vec::new();
    let mut listed = HashSet::new();
    for title in &tc.header {
        match w.column_index(title) {
            None => {
                sink.push(Code::E110, tc.span, format!("`{}` has no column `{title}`", w.name));
                ok = false;
            }
            Some(_) if ignored.contains(title.trim()) => {
                sink.push(Code::E110, tc.span, format!("column `{title}` is both ignored and asserted"));
                ok = false;
            }
            Some(index) => {
                listed.insert(index);
                columns.push(crate::analyzer::ExpectedColumn { title: title.trim().to_string(), index });
            }
        }
    }
    for (i, c) in w.columns.iter().enumerate() {
        if !listed.contains(&i) && !ignored.contains(c.title.trim()) {
            sink.push(
                Code::E110,
                tc.span,
                format!("column `{}` must be listed in the header or ignored", c.title.trim()),
            );
            ok = false;
        }
    }
    for row in &tc.rows {
        if row.cells.len() != tc.header.len() {
            sink.push(Code::E108, row.span, "row arity differs from the header");
            ok = false;
        }
    }
    let marked = tc.rows.iter().filter(|r| r.selected).count();
    if marked > 1 {
        sink.push(Code::E106, tc.span, "more than one row carries `[selected]`");
        ok = false;
    }
    let selection_asserted = marked > 0 || tc.selected_row.is_some();
    if selection_asserted && !w.has_feature(FeatureKind::SelectedRow) {
        sink.push(Code::E102, tc.span, format!("`{}` does not support `selectedRow`", w.name));
        ok = false;
    }
    if marked > 0 && tc.selected_row.is_some() {
        sink.push(Code::E106, tc.span, "selection is asserted both by `[selected]` and `selectedRow`");
        ok = false;
    }
    if !ok {
        return Vec::new();
    }
    let mut out = vec![(
        CheckValue {
            widget: w.name.clone(),
            feature: FeatureKind::Rows,
            expectation: Expectation::Rows(RowsExpectation {
                columns,
                ignored_columns: tc.ignored_columns.iter().map(|t| t.trim().to_string()).collect(),
                rows: tc.rows.clone(),
            }),
        },
        tc.span,
    )];
    if let Some(sel) = tc.selected_row {
        out.push((
            CheckValue {
                widget: w.name.clone(),
                feature: FeatureKind::SelectedRow,
                expectation: Expectation::SelectedRow(sel),
            },
            tc.span,
        ));
    }
    out
}

#[cfg(test)]
mod tests;
