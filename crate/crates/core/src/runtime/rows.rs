use crate::analyzer::RowsExpectation;
use crate::model::{Color, FeatureKind};

use super::store::RowValue;
use super::{Aspect, Failure};

/// Absent tooltips are reported as this string.
pub const NO_TOOLTIP: &str = "<none>";

fn color_name(c: Option<Color>) -> &'static str {
    c.unwrap_or(Color::Uncolored).name()
}

/// Compares a table against a rows expectation.
///
/// A row count mismatch yields exactly one failure. Tooltips and colors are
/// only compared where the expectation states them. Selection is checked
/// only when some row carries `[selected]`.
pub fn evaluate_rows_check(
    widget: &str,
    expected: &RowsExpectation,
    actual: &[RowValue],
    selected: Option<usize>,
) -> Vec<Failure> {
    let mut out = Vec::new();
    if expected.rows.len() != actual.len() {
        out.push(Failure {
            widget: widget.to_string(),
            feature: FeatureKind::Rows,
            row_index: None,
            column_title: None,
            aspect: Aspect::RowCount,
            expected: expected.rows.len().to_string(),
            actual: actual.len().to_string(),
        });
        return out;
    }
    let failure = |row: usize, column: Option<&str>, feature, aspect, expected: &str, actual: &str| Failure {
        widget: widget.to_string(),
        feature,
        row_index: Some(row),
        column_title: column.map(str::to_string),
        aspect,
        expected: expected.to_string(),
        actual: actual.to_string(),
    };
    let marked = expected.rows.iter().position(|r| r.selected);
    for (i, (want, got)) in expected.rows.iter().zip(actual).enumerate() {
        for (col, cell) in expected.columns.iter().zip(&want.cells) {
            if cell.ignored {
                continue;
            }
            let have = &got.cells[col.index];
            let title = Some(col.title.as_str());
            if cell.value != have.text {
                out.push(failure(i, title, FeatureKind::Rows, Aspect::Value, &cell.value, &have.text));
            }
            if let Some(tip) = &cell.tooltip {
                let actual_tip = have.tooltip.as_deref().unwrap_or(NO_TOOLTIP);
                if have.tooltip.as_ref() != Some(tip) {
                    out.push(failure(i, title, FeatureKind::Rows, Aspect::Tooltip, tip, actual_tip));
                }
            }
            if let Some(c) = cell.color {
                if color_name(Some(c)) != color_name(have.color) {
                    out.push(failure(i, title, FeatureKind::Rows, Aspect::Color, c.name(), color_name(have.color)));
                }
            }
        }
        if let Some(c) = want.color {
            if color_name(Some(c)) != color_name(got.color) {
                out.push(failure(i, None, FeatureKind::Rows, Aspect::Color, c.name(), color_name(got.color)));
            }
        }
        if let Some(m) = marked {
            let is_selected = selected == Some(i);
            if i == m && !is_selected {
                out.push(failure(i, None, FeatureKind::SelectedRow, Aspect::Selected, "selected", "not selected"));
            } else if i != m && is_selected {
                out.push(failure(i, None, FeatureKind::SelectedRow, Aspect::Selected, "not selected", "selected"));
            }
        }
    }
    out
}
