//! The target-neutral intermediate representation.
//!
//! Every name in here comes from the [`NameMap`](crate::analyzer::NameMap)
//! or from the fixed fixture vocabulary. No target keywords or type
//! spellings appear; emitters own all syntax.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum IrType {
    Bool,
    String,
    /// 64-bit signed integer.
    Int,
    /// A row position.
    Index,
    RowList,
    OptIndex,
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ClassRole {
    ViewModel,
    Controller,
    /// Nested inside `owner`.
    Params {
        owner: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IrProperty {
    pub name: String,
    pub ty: IrType,
    pub getter: String,
    /// Parameter objects are immutable and have no setters.
    pub setter: Option<String>,
    pub initial: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IrParam {
    pub name: String,
    pub ty: IrType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IrOperation {
    pub name: String,
    pub params: Vec<IrParam>,
    pub is_abstract: bool,
    /// What the generated test has already applied before calling.
    pub doc: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IrClass {
    pub name: String,
    pub role: ClassRole,
    pub is_abstract: bool,
    pub properties: Vec<IrProperty>,
    pub operations: Vec<IrOperation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Receiver {
    ViewModel,
    Controller,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Expr {
    Str(String),
    Bool(bool),
    Int(i64),
    Index(usize),
    OptIndex(Option<usize>),
    EmptyRows,
    Local(String),
    /// Contents of a file, relative to where the test runs.
    ReadFile(String),
    NewParams {
        owner: String,
        class: String,
        args: Vec<Expr>,
    },
    Get {
        receiver: Receiver,
        getter: String,
    },
    MatrixRowCount {
        matrix: String,
    },
    MatrixCell {
        matrix: String,
        row: usize,
        column: usize,
    },
    RowCount {
        rows: String,
    },
    /// `column` indexes the widget's declared columns.
    CellText {
        rows: String,
        row: usize,
        column: usize,
    },
    CellTooltip {
        rows: String,
        row: usize,
        column: usize,
    },
    CellColor {
        rows: String,
        row: usize,
        column: usize,
    },
    RowColor {
        rows: String,
        row: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Payload {
    Local(String),
    File(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Statement {
    Comment(String),
    /// Creates the setup and the view model, and the controller when
    /// commands live there.
    Fixture,
    DeclareLocal {
        name: String,
        ty: IrType,
        value: Expr,
    },
    CallSetup {
        context: String,
        payload: Payload,
    },
    Invoke {
        receiver: Receiver,
        method: String,
        args: Vec<Expr>,
    },
    /// With `guard`, a failure ends the test.
    AssertEqual {
        expected: Expr,
        actual: Expr,
        message: Vec<String>,
        guard: bool,
    },
    /// Expected cell texts, `None` where a cell is ignored.
    ConstructRowMatrix {
        name: String,
        rows: Vec<Vec<Option<String>>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IrTest {
    pub name: String,
    pub description: String,
    pub statements: Vec<Statement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContextFile {
    pub path: String,
    pub contents: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IrSuite {
    pub name: String,
    pub setup_class: String,
    pub tests: Vec<IrTest>,
    pub context_files: Vec<ContextFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IrUnit {
    pub type_name: String,
    pub file_name: String,
    /// Set when commands live on a separate controller.
    pub controller: Option<String>,
    pub classes: Vec<IrClass>,
    pub suites: Vec<IrSuite>,
}

impl IrUnit {
    pub fn class(&self, name: &str) -> Option<&IrClass> {
        self.classes.iter().find(|c| c.name == name)
    }

    pub fn has_rows(&self) -> bool {
        self.classes.iter().flat_map(|c| &c.properties).any(|p| p.ty == IrType::RowList)
    }

    pub fn params_of<'a>(&'a self, owner: &'a str) -> impl Iterator<Item = &'a IrClass> + 'a {
        self.classes.iter().filter(move |c| matches!(&c.role, ClassRole::Params { owner: o } if o == owner))
    }
}

impl Statement {
    pub fn is_assertion(&self) -> bool {
        matches!(self, Statement::AssertEqual { .. })
    }
}
