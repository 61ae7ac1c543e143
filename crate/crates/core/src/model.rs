//! Widget catalog and the syntax trees shared by the parser, analyzer,
//! runtime and generators.
//!
//! Every AST node carries a [`Span`], but spans never take part in equality:
//! two trees are equal when they describe the same program, wherever it was
//! written.

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Location of a syntax element inside its source text.
///
/// `offset` is a byte offset; `line` and `column` are 1-based, the column
/// counting characters. `length` is in bytes.
#[derive(Debug, Clone, Copy, Default, Eq, Serialize, Deserialize)]
pub struct Span {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl PartialEq for Span {
    fn eq(&self, _other: &Span) -> bool {
        true
    }
}

impl Span {
    pub fn new(offset: usize, line: usize, column: usize, length: usize) -> Span {
        Span { offset, line, column, length }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WidgetKind {
    Button,
    Label,
    Checkbox,
    Textfield,
    Table,
}

impl WidgetKind {
    pub const ALL: [WidgetKind; 5] =
        [WidgetKind::Button, WidgetKind::Label, WidgetKind::Checkbox, WidgetKind::Textfield, WidgetKind::Table];

    pub fn keyword(self) -> &'static str {
        match self {
            WidgetKind::Button => "button",
            WidgetKind::Label => "label",
            WidgetKind::Checkbox => "checkbox",
            WidgetKind::Textfield => "textfield",
            WidgetKind::Table => "table",
        }
    }

    pub fn from_keyword(word: &str) -> Option<WidgetKind> {
        WidgetKind::ALL.into_iter().find(|k| k.keyword() == word)
    }
}

impl fmt::Display for WidgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// The value type carried by a feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueType {
    Bool,
    String,
    Rows,
    OptionalIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FeatureKind {
    Enabled,
    Visible,
    Text,
    Checked,
    Rows,
    SelectedRow,
}

impl FeatureKind {
    pub const ALL: [FeatureKind; 6] = [
        FeatureKind::Enabled,
        FeatureKind::Visible,
        FeatureKind::Text,
        FeatureKind::Checked,
        FeatureKind::Rows,
        FeatureKind::SelectedRow,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            FeatureKind::Enabled => "enabled",
            FeatureKind::Visible => "visible",
            FeatureKind::Text => "text",
            FeatureKind::Checked => "checked",
            FeatureKind::Rows => "rows",
            FeatureKind::SelectedRow => "selectedRow",
        }
    }

    pub fn from_keyword(word: &str) -> Option<FeatureKind> {
        FeatureKind::ALL.into_iter().find(|k| k.keyword() == word)
    }

    pub fn value_type(self) -> ValueType {
        match self {
            FeatureKind::Enabled | FeatureKind::Visible | FeatureKind::Checked => ValueType::Bool,
            FeatureKind::Text => ValueType::String,
            FeatureKind::Rows => ValueType::Rows,
            FeatureKind::SelectedRow => ValueType::OptionalIndex,
        }
    }

    /// `Enabled`, `SelectedRow`, ... as used when composing target names.
    pub fn pascal(self) -> &'static str {
        match self {
            FeatureKind::Enabled => "Enabled",
            FeatureKind::Visible => "Visible",
            FeatureKind::Text => "Text",
            FeatureKind::Checked => "Checked",
            FeatureKind::Rows => "Rows",
            FeatureKind::SelectedRow => "SelectedRow",
        }
    }
}

impl fmt::Display for FeatureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CommandKind {
    Click,
    Check,
    FillText,
    SelectRow,
}

impl CommandKind {
    pub const ALL: [CommandKind; 4] =
        [CommandKind::Click, CommandKind::Check, CommandKind::FillText, CommandKind::SelectRow];

    pub fn keyword(self) -> &'static str {
        match self {
            CommandKind::Click => "click",
            CommandKind::Check => "check",
            CommandKind::FillText => "fillText",
            CommandKind::SelectRow => "selectRow",
        }
    }

    pub fn from_keyword(word: &str) -> Option<CommandKind> {
        CommandKind::ALL.into_iter().find(|k| k.keyword() == word)
    }

    pub fn pascal(self) -> &'static str {
        match self {
            CommandKind::Click => "Click",
            CommandKind::Check => "Check",
            CommandKind::FillText => "FillText",
            CommandKind::SelectRow => "SelectRow",
        }
    }

    /// The inherent parameter of the command, if it has one.
    pub fn parameter(self) -> Option<(&'static str, ParamType)> {
        match self {
            CommandKind::Click => None,
            CommandKind::Check => Some(("checked", ParamType::Bool)),
            CommandKind::FillText => Some(("text", ParamType::String)),
            CommandKind::SelectRow => Some(("index", ParamType::Int)),
        }
    }

    /// The feature a widget command writes before presentation logic runs.
    pub fn intrinsic_feature(self) -> Option<FeatureKind> {
        match self {
            CommandKind::Click => None,
            CommandKind::Check => Some(FeatureKind::Checked),
            CommandKind::FillText => Some(FeatureKind::Text),
            CommandKind::SelectRow => Some(FeatureKind::SelectedRow),
        }
    }
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Static description of a widget kind.
#[derive(Debug, PartialEq, Eq)]
pub struct WidgetCatalogEntry {
    pub kind: WidgetKind,
    pub inherent: &'static [FeatureKind],
    pub optional: &'static [FeatureKind],
    pub commands: &'static [CommandKind],
}

impl WidgetCatalogEntry {
    pub fn is_inherent(&self, feature: FeatureKind) -> bool {
        self.inherent.contains(&feature)
    }

    pub fn is_optional(&self, feature: FeatureKind) -> bool {
        self.optional.contains(&feature)
    }

    pub fn supports_command(&self, command: CommandKind) -> bool {
        self.commands.contains(&command)
    }
}

static CATALOG: [WidgetCatalogEntry; 5] = [
    WidgetCatalogEntry {
        kind: WidgetKind::Button,
        inherent: &[],
        optional: &[FeatureKind::Enabled, FeatureKind::Visible],
        commands: &[CommandKind::Click],
    },
    WidgetCatalogEntry {
        kind: WidgetKind::Label,
        inherent: &[FeatureKind::Text],
        optional: &[FeatureKind::Enabled, FeatureKind::Visible],
        commands: &[],
    },
    WidgetCatalogEntry {
        kind: WidgetKind::Checkbox,
        inherent: &[FeatureKind::Checked],
        optional: &[FeatureKind::Enabled, FeatureKind::Visible],
        commands: &[CommandKind::Check],
    },
    WidgetCatalogEntry {
        kind: WidgetKind::Textfield,
        inherent: &[FeatureKind::Text],
        optional: &[FeatureKind::Enabled, FeatureKind::Visible],
        commands: &[CommandKind::FillText],
    },
    WidgetCatalogEntry {
        kind: WidgetKind::Table,
        inherent: &[FeatureKind::Rows],
        optional: &[FeatureKind::SelectedRow, FeatureKind::Enabled, FeatureKind::Visible],
        commands: &[CommandKind::SelectRow],
    },
];

/// Returns the fixed catalog entry for `kind`.
pub fn catalog_lookup(kind: WidgetKind) -> &'static WidgetCatalogEntry {
    match kind {
        WidgetKind::Button => &CATALOG[0],
        WidgetKind::Label => &CATALOG[1],
        WidgetKind::Checkbox => &CATALOG[2],
        WidgetKind::Textfield => &CATALOG[3],
        WidgetKind::Table => &CATALOG[4],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentError {
    #[error("identifier must not be empty")]
    Empty,
    #[error("identifier `{0}` must start with an ASCII letter")]
    BadStart(String),
    #[error("identifier `{raw}` contains `{found}`; only letters, digits and `_` are allowed")]
    BadChar { raw: String, found: char },
}

/// A name matching `[A-Za-z][A-Za-z0-9_]*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Ident(String);

impl Ident {
    pub fn new(raw: impl Into<String>) -> Result<Ident, IdentError> {
        let raw = raw.into();
        validate_identifier(&raw)?;
        Ok(Ident(raw))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Accepts `[A-Za-z][A-Za-z0-9_]*`.
pub fn validate_identifier(raw: &str) -> Result<&str, IdentError> {
    let mut chars = raw.chars();
    match chars.next() {
        None => return Err(IdentError::Empty),
        Some(c) if !c.is_ascii_alphabetic() => return Err(IdentError::BadStart(raw.to_string())),
        Some(_) => {}
    }
    if let Some(found) = chars.find(|c| !(c.is_ascii_alphanumeric() || *c == '_')) {
        return Err(IdentError::BadChar { raw: raw.to_string(), found });
    }
    Ok(raw)
}

impl TryFrom<String> for Ident {
    type Error = IdentError;

    fn try_from(raw: String) -> Result<Ident, IdentError> {
        Ident::new(raw)
    }
}

impl From<Ident> for String {
    fn from(ident: Ident) -> String {
        ident.0
    }
}

impl AsRef<str> for Ident {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl PartialEq<str> for Ident {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

impl PartialEq<&str> for Ident {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Named colors. There are no RGB literals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Green,
    Yellow,
    Blue,
    Gray,
    #[serde(rename = "none")]
    Uncolored,
}

impl Color {
    pub const ALL: [Color; 6] = [Color::Red, Color::Green, Color::Yellow, Color::Blue, Color::Gray, Color::Uncolored];

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Yellow => "yellow",
            Color::Blue => "blue",
            Color::Gray => "gray",
            Color::Uncolored => "none",
        }
    }

    pub fn from_name(name: &str) -> Option<Color> {
        Color::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    Str(String),
    Bool(bool),
    Int(i64),
}

impl Literal {
    pub fn type_name(&self) -> &'static str {
        match self {
            Literal::Str(_) => "string",
            Literal::Bool(_) => "bool",
            Literal::Int(_) => "int",
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Str(s) => write!(f, "{s:?}"),
            Literal::Bool(b) => write!(f, "{b}"),
            Literal::Int(i) => write!(f, "{i}"),
        }
    }
}

// ---------------------------------------------------------------------------
// ViewModel descriptions

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    Label,
    Image,
    Checkbox,
}

impl CellKind {
    pub fn keyword(self) -> &'static str {
        match self {
            CellKind::Label => "label",
            CellKind::Image => "image",
            CellKind::Checkbox => "checkbox",
        }
    }

    pub fn from_keyword(word: &str) -> Option<CellKind> {
        [CellKind::Label, CellKind::Image, CellKind::Checkbox].into_iter().find(|k| k.keyword() == word)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnSpec {
    pub cell_kind: CellKind,
    pub title: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleValue {
    pub feature: FeatureKind,
    pub value: Literal,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidgetDecl {
    pub name: Ident,
    pub kind: WidgetKind,
    /// Optional features switched on by `supports`, in source order.
    pub supports: Vec<FeatureKind>,
    pub columns: Vec<ColumnSpec>,
    pub examples: Vec<ExampleValue>,
    pub span: Span,
}

impl WidgetDecl {
    /// Inherent features followed by the enabled optional ones.
    pub fn features(&self) -> Vec<FeatureKind> {
        let mut out: Vec<FeatureKind> = catalog_lookup(self.kind).inherent.to_vec();
        for f in &self.supports {
            if !out.contains(f) {
                out.push(*f);
            }
        }
        out
    }

    pub fn has_feature(&self, feature: FeatureKind) -> bool {
        catalog_lookup(self.kind).is_inherent(feature) || self.supports.contains(&feature)
    }

    pub fn column_index(&self, title: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.title.trim() == title.trim())
    }

    pub fn example(&self, feature: FeatureKind) -> Option<&Literal> {
        self.examples.iter().find(|e| e.feature == feature).map(|e| &e.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamType {
    String,
    Bool,
    Int,
    Context,
}

impl ParamType {
    pub fn keyword(self) -> &'static str {
        match self {
            ParamType::String => "string",
            ParamType::Bool => "bool",
            ParamType::Int => "int",
            ParamType::Context => "context",
        }
    }

    pub fn from_keyword(word: &str) -> Option<ParamType> {
        [ParamType::String, ParamType::Bool, ParamType::Int, ParamType::Context]
            .into_iter()
            .find(|k| k.keyword() == word)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: Ident,
    pub ty: ParamType,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandForm {
    Widget { kind: CommandKind, target: Ident },
    Custom { params: Vec<Param> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandDecl {
    /// For widget commands this is derived: `AddNewTask` + `Click`.
    pub name: Ident,
    pub form: CommandForm,
    pub span: Span,
}

impl CommandDecl {
    pub fn widget(kind: CommandKind, target: Ident, span: Span) -> CommandDecl {
        let name = Ident(format!("{}{}", target, kind.pascal()));
        CommandDecl { name, form: CommandForm::Widget { kind, target }, span }
    }

    pub fn custom(name: Ident, params: Vec<Param>, span: Span) -> CommandDecl {
        CommandDecl { name, form: CommandForm::Custom { params }, span }
    }

    pub fn is_custom(&self) -> bool {
        matches!(self.form, CommandForm::Custom { .. })
    }

    /// Parameter list as seen by presentation logic.
    pub fn parameters(&self) -> Vec<(String, ParamType)> {
        match &self.form {
            CommandForm::Widget { kind, .. } => kind.parameter().map(|(n, t)| (n.to_string(), t)).into_iter().collect(),
            CommandForm::Custom { params } => params.iter().map(|p| (p.name.to_string(), p.ty)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BindingSubject {
    TypeName,
    FileName,
    PropertyName { widget: Ident, feature: FeatureKind },
    GetterName { widget: Ident, feature: FeatureKind },
}

impl fmt::Display for BindingSubject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BindingSubject::TypeName => f.write_str("typeName"),
            BindingSubject::FileName => f.write_str("fileName"),
            BindingSubject::PropertyName { widget, feature } => {
                write!(f, "property {widget}.{feature} name")
            }
            BindingSubject::GetterName { widget, feature } => {
                write!(f, "property {widget}.{feature} getter")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameBinding {
    pub subject: BindingSubject,
    pub bound: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewModelDescription {
    pub name: Ident,
    pub bindings: Vec<NameBinding>,
    pub widgets: Vec<WidgetDecl>,
    pub commands: Vec<CommandDecl>,
    pub source: PathBuf,
    pub span: Span,
}

impl ViewModelDescription {
    pub fn widget(&self, name: &str) -> Option<&WidgetDecl> {
        self.widgets.iter().find(|w| w.name == name)
    }

    pub fn command(&self, name: &str) -> Option<&CommandDecl> {
        self.commands.iter().find(|c| c.name == name)
    }

    pub fn binding(&self, subject: &BindingSubject) -> Option<&NameBinding> {
        self.bindings.iter().find(|b| &b.subject == subject)
    }

    /// The widget command of `kind` declared on `target`, if any.
    pub fn widget_command(&self, kind: CommandKind, target: &str) -> Option<&CommandDecl> {
        self.commands.iter().find(|c| match &c.form {
            CommandForm::Widget { kind: k, target: t } => *k == kind && t == target,
            CommandForm::Custom { .. } => false,
        })
    }
}

// ---------------------------------------------------------------------------
// Test suites

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DataTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContextBody {
    DataTable(DataTable),
    Text(String),
    Xml(String),
    /// Path relative to the suite file.
    File(String),
    /// Another context of the same suite.
    Reference(Ident),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextDefinition {
    /// Local name. For `use X` this equals the referenced name.
    pub name: Ident,
    pub body: ContextBody,
    pub span: Span,
}

impl ContextDefinition {
    /// `use X` without an alias imports X rather than defining a new name.
    pub fn is_plain_use(&self) -> bool {
        matches!(&self.body, ContextBody::Reference(target) if *target == self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Literal(Literal),
    Context(Ident),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Custom { name: Ident, args: Vec<Arg>, span: Span },
    Widget { kind: CommandKind, target: Ident, arg: Option<Literal>, span: Span },
}

impl Action {
    pub fn span(&self) -> Span {
        match self {
            Action::Custom { span, .. } | Action::Widget { span, .. } => *span,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureCheck {
    pub feature: FeatureKind,
    pub expected: Literal,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidgetCheck {
    pub kind: WidgetKind,
    pub widget: Ident,
    pub features: Vec<FeatureCheck>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CellExpectation {
    pub ignored: bool,
    pub value: String,
    pub tooltip: Option<String>,
    pub color: Option<Color>,
}

impl CellExpectation {
    pub fn text(value: impl Into<String>) -> CellExpectation {
        CellExpectation { value: value.into(), ..CellExpectation::default() }
    }

    pub fn ignored() -> CellExpectation {
        CellExpectation { ignored: true, ..CellExpectation::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RowExpectation {
    pub cells: Vec<CellExpectation>,
    pub selected: bool,
    pub color: Option<Color>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCheck {
    pub widget: Ident,
    pub ignored_columns: Vec<String>,
    /// Titles of the asserted (non-ignored) columns.
    pub header: Vec<String>,
    pub rows: Vec<RowExpectation>,
    /// `selectedRow 2` / `selectedRow none`.
    pub selected_row: Option<Option<usize>>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Widget(WidgetCheck),
    Table(TableCheck),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestScenario {
    pub description: String,
    pub given: Vec<ContextDefinition>,
    pub when: Vec<Action>,
    pub then: Vec<Check>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSuite {
    pub name: Ident,
    pub target: Ident,
    pub scenarios: Vec<TestScenario>,
    pub source: PathBuf,
    pub span: Span,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkbox_has_checked_and_check_command() {
        let entry = catalog_lookup(WidgetKind::Checkbox);
        assert_eq!(entry.inherent, &[FeatureKind::Checked]);
        assert_eq!(entry.commands, &[CommandKind::Check]);
    }

    #[test]
    fn table_has_rows_and_optional_selection() {
        let entry = catalog_lookup(WidgetKind::Table);
        assert_eq!(entry.inherent, &[FeatureKind::Rows]);
        assert!(entry.is_optional(FeatureKind::SelectedRow));
        assert_eq!(entry.commands, &[CommandKind::SelectRow]);
    }

    #[test]
    fn button_is_click_only() {
        let entry = catalog_lookup(WidgetKind::Button);
        assert!(entry.inherent.is_empty());
        assert_eq!(entry.commands, &[CommandKind::Click]);
    }

    #[test]
    fn catalog_is_total_and_disjoint() {
        for kind in WidgetKind::ALL {
            let entry = catalog_lookup(kind);
            assert_eq!(entry.kind, kind);
            for f in entry.inherent {
                assert!(!entry.optional.contains(f), "{kind}: {f} both inherent and optional");
            }
        }
    }

    #[test]
    fn identifiers() {
        assert_eq!(validate_identifier("TaskListViewModel"), Ok("TaskListViewModel"));
        assert_eq!(validate_identifier("a_1"), Ok("a_1"));
        assert_eq!(validate_identifier(""), Err(IdentError::Empty));
        assert!(matches!(validate_identifier("2tasks"), Err(IdentError::BadStart(_))));
        assert!(matches!(validate_identifier("task-list"), Err(IdentError::BadChar { found: '-', .. })));
        assert!(validate_identifier("_x").is_err());
    }

    #[test]
    fn spans_do_not_affect_equality() {
        let a = Span::new(0, 1, 1, 3);
        let b = Span::new(10, 2, 5, 1);
        assert_eq!(a, b);
    }

    #[test]
    fn widget_command_names_are_derived() {
        let cmd = CommandDecl::widget(CommandKind::Click, Ident::new("AddNewTask").unwrap(), Span::default());
        assert_eq!(cmd.name, "AddNewTaskClick");
        assert!(cmd.parameters().is_empty());
        let sel = CommandDecl::widget(CommandKind::SelectRow, Ident::new("Tasks").unwrap(), Span::default());
        assert_eq!(sel.parameters(), vec![("index".to_string(), ParamType::Int)]);
    }
}
