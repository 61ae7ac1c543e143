use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::model::Span;

/// The closed set of diagnostic codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Code {
    /// Syntax error.
    E001,
    /// Unknown widget.
    E101,
    /// Unsupported feature.
    E102,
    /// Unknown command.
    E103,
    /// Arity mismatch.
    E104,
    /// Argument type mismatch.
    E105,
    /// Duplicate name.
    E106,
    /// Unresolved context reference.
    E107,
    /// Ragged data table.
    E108,
    /// Context reference cycle.
    E109,
    /// Unknown column title in an ignore list.
    E110,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::E001 => "E001",
            Code::E101 => "E101",
            Code::E102 => "E102",
            Code::E103 => "E103",
            Code::E104 => "E104",
            Code::E105 => "E105",
            Code::E106 => "E106",
            Code::E107 => "E107",
            Code::E108 => "E108",
            Code::E109 => "E109",
            Code::E110 => "E110",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: Code,
    pub severity: Severity,
    pub message: String,
    pub file: PathBuf,
    pub span: Span,
}

impl Diagnostic {
    pub fn error(code: Code, file: &Path, span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic { code, severity: Severity::Error, message: message.into(), file: file.to_path_buf(), span }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

/// `file:line:col: CODE: message`
impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: {}: {}", self.file.display(), self.span.line, self.span.column, self.code, self.message)
    }
}

/// Sorts by file then position, keeping the relative order of ties.
pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by(|a, b| (&a.file, a.span.offset).cmp(&(&b.file, b.span.offset)));
}
