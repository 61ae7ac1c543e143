use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Color, FeatureKind, Literal, ValueType, ViewModelDescription, WidgetKind};

/// One displayed cell: text (or image name), tooltip and color.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CellValue {
    pub text: String,
    pub tooltip: Option<String>,
    pub color: Option<Color>,
}

impl CellValue {
    pub fn text(text: impl Into<String>) -> CellValue {
        CellValue { text: text.into(), ..CellValue::default() }
    }

    pub fn with_tooltip(mut self, tooltip: impl Into<String>) -> CellValue {
        self.tooltip = Some(tooltip.into());
        self
    }

    pub fn with_color(mut self, color: Color) -> CellValue {
        self.color = Some(color);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RowValue {
    pub cells: Vec<CellValue>,
    pub color: Option<Color>,
}

impl RowValue {
    pub fn new(cells: Vec<CellValue>) -> RowValue {
        RowValue { cells, color: None }
    }

    /// A row of plain text cells.
    pub fn texts<S: Into<String>>(texts: impl IntoIterator<Item = S>) -> RowValue {
        RowValue::new(texts.into_iter().map(CellValue::text).collect())
    }

    pub fn with_color(mut self, color: Color) -> RowValue {
        self.color = Some(color);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeatureValue {
    Bool(bool),
    Text(String),
    Rows(Vec<RowValue>),
    Selected(Option<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StoreError {
    #[error("no widget named `{0}`")]
    UnknownWidget(String),
    #[error("widget `{widget}` has no `{feature}` feature")]
    FeatureNotPresent { widget: String, feature: FeatureKind },
    #[error("feature `{widget}.{feature}` does not hold {wanted}")]
    TypeMismatch { widget: String, feature: FeatureKind, wanted: &'static str },
    #[error("row for `{widget}` has {actual} cells, the table has {expected} columns")]
    CellArity { widget: String, expected: usize, actual: usize },
    #[error("row {index} of `{widget}` does not exist ({rows} rows)")]
    SelectionOutOfRange { widget: String, index: usize, rows: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct WidgetState {
    kind: WidgetKind,
    columns: usize,
    features: BTreeMap<FeatureKind, FeatureValue>,
}

/// Observable widget state for one scenario execution.
///
/// Holds exactly the features the description enables. Every table row has
/// one cell per declared column, and a selection always points at a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidgetStateStore {
    widgets: BTreeMap<String, WidgetState>,
}

fn initial(feature: FeatureKind, example: Option<&Literal>) -> FeatureValue {
    match (feature.value_type(), example) {
        (ValueType::Bool, Some(Literal::Bool(b))) => FeatureValue::Bool(*b),
        (ValueType::Bool, _) => FeatureValue::Bool(!matches!(feature, FeatureKind::Checked)),
        (ValueType::String, Some(Literal::Str(s))) => FeatureValue::Text(s.clone()),
        (ValueType::String, _) => FeatureValue::Text(String::new()),
        (ValueType::Rows, _) => FeatureValue::Rows(Vec::new()),
        (ValueType::OptionalIndex, _) => FeatureValue::Selected(None),
    }
}

impl WidgetStateStore {
    /// Defaults: `enabled` and `visible` true, `checked` false, empty text
    /// and rows, no selection. Examples override the defaults.
    pub fn from_description(desc: &ViewModelDescription) -> WidgetStateStore {
        let widgets = desc
            .widgets
            .iter()
            .map(|w| {
                let features = w.features().into_iter().map(|f| (f, initial(f, w.example(f)))).collect();
                (w.name.to_string(), WidgetState { kind: w.kind, columns: w.columns.len(), features })
            })
            .collect();
        WidgetStateStore { widgets }
    }

    fn state(&self, widget: &str) -> Result<&WidgetState, StoreError> {
        self.widgets.get(widget).ok_or_else(|| StoreError::UnknownWidget(widget.to_string()))
    }

    pub fn kind(&self, widget: &str) -> Result<WidgetKind, StoreError> {
        Ok(self.state(widget)?.kind)
    }

    pub fn has(&self, widget: &str, feature: FeatureKind) -> bool {
        self.widgets.get(widget).is_some_and(|w| w.features.contains_key(&feature))
    }

    pub fn get(&self, widget: &str, feature: FeatureKind) -> Result<&FeatureValue, StoreError> {
        self.state(widget)?
            .features
            .get(&feature)
            .ok_or_else(|| StoreError::FeatureNotPresent { widget: widget.to_string(), feature })
    }

    fn slot(&mut self, widget: &str, feature: FeatureKind) -> Result<&mut FeatureValue, StoreError> {
        self.widgets
            .get_mut(widget)
            .ok_or_else(|| StoreError::UnknownWidget(widget.to_string()))?
            .features
            .get_mut(&feature)
            .ok_or_else(|| StoreError::FeatureNotPresent { widget: widget.to_string(), feature })
    }

    fn mismatch(widget: &str, feature: FeatureKind, wanted: &'static str) -> StoreError {
        StoreError::TypeMismatch { widget: widget.to_string(), feature, wanted }
    }

    pub fn bool(&self, widget: &str, feature: FeatureKind) -> Result<bool, StoreError> {
        match self.get(widget, feature)? {
            FeatureValue::Bool(b) => Ok(*b),
            _ => Err(Self::mismatch(widget, feature, "a bool")),
        }
    }

    pub fn set_bool(&mut self, widget: &str, feature: FeatureKind, value: bool) -> Result<(), StoreError> {
        match self.slot(widget, feature)? {
            FeatureValue::Bool(b) => {
                *b = value;
                Ok(())
            }
            _ => Err(Self::mismatch(widget, feature, "a bool")),
        }
    }

    pub fn text(&self, widget: &str) -> Result<&str, StoreError> {
        match self.get(widget, FeatureKind::Text)? {
            FeatureValue::Text(t) => Ok(t),
            _ => Err(Self::mismatch(widget, FeatureKind::Text, "text")),
        }
    }

    pub fn set_text(&mut self, widget: &str, value: impl Into<String>) -> Result<(), StoreError> {
        match self.slot(widget, FeatureKind::Text)? {
            FeatureValue::Text(t) => {
                *t = value.into();
                Ok(())
            }
            _ => Err(Self::mismatch(widget, FeatureKind::Text, "text")),
        }
    }

    pub fn rows(&self, widget: &str) -> Result<&[RowValue], StoreError> {
        match self.get(widget, FeatureKind::Rows)? {
            FeatureValue::Rows(r) => Ok(r),
            _ => Err(Self::mismatch(widget, FeatureKind::Rows, "rows")),
        }
    }

    /// `None` when the table does not support selection or nothing is selected.
    pub fn selected_row(&self, widget: &str) -> Result<Option<usize>, StoreError> {
        match self.get(widget, FeatureKind::SelectedRow) {
            Ok(FeatureValue::Selected(s)) => Ok(*s),
            Ok(_) => Err(Self::mismatch(widget, FeatureKind::SelectedRow, "a row index")),
            Err(StoreError::FeatureNotPresent { .. }) => {
                self.rows(widget)?;
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    fn check_arity(&self, widget: &str, rows: &[RowValue]) -> Result<(), StoreError> {
        let expected = self.state(widget)?.columns;
        match rows.iter().find(|r| r.cells.len() != expected) {
            Some(bad) => Err(StoreError::CellArity { widget: widget.to_string(), expected, actual: bad.cells.len() }),
            None => Ok(()),
        }
    }

    /// Replaces all rows. Fails if the current selection would point past the end.
    pub fn set_rows(&mut self, widget: &str, rows: Vec<RowValue>) -> Result<(), StoreError> {
        self.check_arity(widget, &rows)?;
        if let Some(index) = self.selected_row(widget)? {
            if index >= rows.len() {
                return Err(StoreError::SelectionOutOfRange { widget: widget.to_string(), index, rows: rows.len() });
            }
        }
        *self.slot(widget, FeatureKind::Rows)? = FeatureValue::Rows(rows);
        Ok(())
    }

    /// Appends a row and returns its index.
    pub fn push_row(&mut self, widget: &str, row: RowValue) -> Result<usize, StoreError> {
        self.check_arity(widget, std::slice::from_ref(&row))?;
        match self.slot(widget, FeatureKind::Rows)? {
            FeatureValue::Rows(rows) => {
                rows.push(row);
                Ok(rows.len() - 1)
            }
            _ => Err(Self::mismatch(widget, FeatureKind::Rows, "rows")),
        }
    }

    /// Removes a row, keeping the selection on the same row or clearing it
    /// when the selected row is the one removed.
    pub fn remove_row(&mut self, widget: &str, index: usize) -> Result<RowValue, StoreError> {
        let selected = self.selected_row(widget)?;
        let FeatureValue::Rows(rows) = self.slot(widget, FeatureKind::Rows)? else {
            return Err(Self::mismatch(widget, FeatureKind::Rows, "rows"));
        };
        if index >= rows.len() {
            return Err(StoreError::SelectionOutOfRange { widget: widget.to_string(), index, rows: rows.len() });
        }
        let removed = rows.remove(index);
        if let Some(s) = selected {
            let next = match s.cmp(&index) {
                std::cmp::Ordering::Less => Some(s),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(s - 1),
            };
            *self.slot(widget, FeatureKind::SelectedRow)? = FeatureValue::Selected(next);
        }
        Ok(removed)
    }

    pub fn set_selected_row(&mut self, widget: &str, index: Option<usize>) -> Result<(), StoreError> {
        self.get(widget, FeatureKind::SelectedRow)?;
        let count = self.rows(widget)?.len();
        if let Some(i) = index {
            if i >= count {
                return Err(StoreError::SelectionOutOfRange { widget: widget.to_string(), index: i, rows: count });
            }
        }
        *self.slot(widget, FeatureKind::SelectedRow)? = FeatureValue::Selected(index);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use std::path::Path;

    use super::*;
    use crate::parser::parse_view_model;

    fn store() -> WidgetStateStore {
        let desc = parse_view_model(
            r#"viewmodel V { widgets {
                table T { columns { label "A" label "B" } supports selectedRow }
                table Plain { columns { label "A" } }
                button B { supports enabled example enabled = false }
                checkbox C
                textfield F { example text = "hi" }
            } commands { } }"#,
            Path::new("v.vmdsl"),
        )
        .unwrap();
        WidgetStateStore::from_description(&desc)
    }

    #[test]
    fn defaults_and_examples() {
        let s = store();
        assert!(!s.bool("B", FeatureKind::Enabled).unwrap());
        assert!(!s.bool("C", FeatureKind::Checked).unwrap());
        assert_eq!(s.text("F").unwrap(), "hi");
        assert!(s.rows("T").unwrap().is_empty());
        assert_eq!(s.selected_row("T").unwrap(), None);
        assert_eq!(s.selected_row("Plain").unwrap(), None);
    }

    #[test]
    fn only_declared_features_are_present() {
        let mut s = store();
        assert!(matches!(s.bool("B", FeatureKind::Visible), Err(StoreError::FeatureNotPresent { .. })));
        assert!(matches!(s.set_bool("C", FeatureKind::Enabled, true), Err(StoreError::FeatureNotPresent { .. })));
        assert!(matches!(s.set_text("Nope", "x"), Err(StoreError::UnknownWidget(_))));
        assert!(matches!(s.set_selected_row("Plain", Some(0)), Err(StoreError::FeatureNotPresent { .. })));
    }

    #[test]
    fn row_invariants() {
        let mut s = store();
        assert!(matches!(s.push_row("T", RowValue::texts(["a"])), Err(StoreError::CellArity { .. })));
        s.set_rows("T", vec![RowValue::texts(["a", "b"]), RowValue::texts(["c", "d"])]).unwrap();
        assert!(matches!(s.set_selected_row("T", Some(2)), Err(StoreError::SelectionOutOfRange { .. })));
        s.set_selected_row("T", Some(1)).unwrap();
        assert!(matches!(s.set_rows("T", vec![]), Err(StoreError::SelectionOutOfRange { .. })));
        assert_eq!(s.push_row("T", RowValue::texts(["e", "f"])).unwrap(), 2);
        s.remove_row("T", 0).unwrap();
        assert_eq!(s.selected_row("T").unwrap(), Some(0));
        s.remove_row("T", 0).unwrap();
        assert_eq!(s.selected_row("T").unwrap(), None);
        assert_eq!(s.rows("T").unwrap()[0].cells[1].text, "f");
    }
}
