//! In-process execution of linked scenarios.
//!
//! Each scenario gets a fresh [`WidgetStateStore`], a fresh
//! [`PresentationLogic`] and a fresh [`TestSetup`]. Given contexts are
//! rendered and handed to the setup, when actions are dispatched to the
//! logic, and then checks are evaluated against the store without
//! short-circuiting.

mod exec;
mod render;
mod rows;
mod store;

use serde::{Deserialize, Serialize};

use crate::config::Delivery;
use crate::model::FeatureKind;

pub use exec::{execute_scenario, run_suite, LogicFactory, RunMode, SetupFactory};
pub use render::{
    render_context, render_json, render_multiline, render_table, render_xml, xml_attribute_name, xml_escape,
    RenderError,
};
pub use rows::{evaluate_rows_check, NO_TOOLTIP};
pub use store::{CellValue, FeatureValue, RowValue, StoreError, WidgetStateStore};

/// Errors raised by hand-written logic or setup code.
pub type LogicError = Box<dyn std::error::Error + Send + Sync>;

/// A command argument as passed to presentation logic. Context arguments
/// arrive as their rendered text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArgValue {
    Bool(bool),
    Int(i64),
    Text(String),
}

impl ArgValue {
    pub fn as_text(&self) -> Option<&str> {
        match self {
            ArgValue::Text(t) => Some(t),
            _ => None,
        }
    }
}

/// The hand-written presentation logic under test.
pub trait PresentationLogic {
    /// Reacts to one view command. `command` is the declared command name,
    /// for widget commands the derived one such as `AddNewTaskClick`.
    fn handle(&mut self, command: &str, args: &[ArgValue], store: &mut WidgetStateStore) -> Result<(), LogicError>;
}

/// Prepares application state from given contexts.
pub trait TestSetup {
    /// With [`Delivery::File`], `payload` is the absolute path of a file
    /// holding the rendered context.
    fn provide_context(&mut self, name: &str, payload: &str, delivery: Delivery) -> Result<(), LogicError>;
}

/// A setup that accepts and discards every context.
#[derive(Debug, Default, Clone, Copy)]
pub struct NullSetup;

impl TestSetup for NullSetup {
    fn provide_context(&mut self, _: &str, _: &str, _: Delivery) -> Result<(), LogicError> {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Status {
    Passed,
    Failed,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Aspect {
    Value,
    Tooltip,
    Color,
    Selected,
    RowCount,
}

impl Aspect {
    pub fn keyword(self) -> &'static str {
        match self {
            Aspect::Value => "value",
            Aspect::Tooltip => "tooltip",
            Aspect::Color => "color",
            Aspect::Selected => "selected",
            Aspect::RowCount => "rowCount",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Failure {
    pub widget: String,
    pub feature: FeatureKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column_title: Option<String>,
    pub aspect: Aspect,
    pub expected: String,
    pub actual: String,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}.{}", self.widget, self.feature)?;
        if let Some(r) = self.row_index {
            write!(f, " row {r}")?;
        }
        if let Some(c) = &self.column_title {
            write!(f, " column \"{c}\"")?;
        }
        write!(f, " {}: expected {:?}, actual {:?}", self.aspect.keyword(), self.expected, self.actual)
    }
}

/// Invariant: `status` is `Passed` iff `failures` is empty and `error` is `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScenarioResult {
    pub description: String,
    pub status: Status,
    pub failures: Vec<Failure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub duration_millis: u64,
}

impl ScenarioResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Passed
    }
}
