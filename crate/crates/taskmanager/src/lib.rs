//! Hand-written presentation logic for the task-manager example view, plus
//! deliberately broken variants used to show that the corpus scenario
//! catches regressions.
//!
//! The logic only touches the widget state store; it keeps no state of its
//! own beyond what the store holds.

use std::sync::{Arc, Mutex};

use chrono::{Datelike, NaiveDate};
use vimotest::config::Delivery;
use vimotest::model::{Color, FeatureKind};
use vimotest::runtime::{ArgValue, CellValue, LogicError, PresentationLogic, RowValue, TestSetup, WidgetStateStore};

pub const TASKS: &str = "Tasks";
pub const ADD_NEW_TASK: &str = "AddNewTask";
pub const DELETE_TASK: &str = "DeleteTask";

/// Which behavior to run. Every variant except `Reference` breaks exactly
/// one observable effect of the corpus scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Reference,
    /// The appended row is not selected.
    NoSelectOnAdd,
    /// The appended row copies the last row's due date.
    KeepDueDate,
    /// High-priority rows are not colored.
    DropRowColor,
    /// AddNewTask does nothing.
    NoAppend,
}

impl Variant {
    pub const ALL: [Variant; 5] =
        [Variant::Reference, Variant::NoSelectOnAdd, Variant::KeepDueDate, Variant::DropRowColor, Variant::NoAppend];

    /// Registry id under which a runner exposes this variant.
    pub fn id(self) -> &'static str {
        match self {
            Variant::Reference => "taskmanager",
            Variant::NoSelectOnAdd => "taskmanager-no-select",
            Variant::KeepDueDate => "taskmanager-keep-due-date",
            Variant::DropRowColor => "taskmanager-no-color",
            Variant::NoAppend => "taskmanager-no-append",
        }
    }
}

/// The id of the generic broken build, an alias of [`Variant::NoSelectOnAdd`].
pub const BUGGY_ID: &str = "taskmanager-buggy";

/// Resolves a registry id, including [`BUGGY_ID`].
pub fn variant_by_id(id: &str) -> Option<Variant> {
    if id == BUGGY_ID {
        return Some(Variant::NoSelectOnAdd);
    }
    Variant::ALL.into_iter().find(|v| v.id() == id)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Task {
    priority: String,
    name: String,
    due: String,
}

#[derive(Debug, Clone, Copy)]
pub struct TaskListLogic {
    variant: Variant,
}

impl TaskListLogic {
    pub fn new(variant: Variant) -> TaskListLogic {
        TaskListLogic { variant }
    }

    fn load_view(&self, args: &[ArgValue], store: &mut WidgetStateStore) -> Result<(), LogicError> {
        let payload = match args {
            [ArgValue::Text(t)] => t,
            _ => return Err("LoadView expects one context argument".into()),
        };
        let rows = parse_tasks(payload)?.iter().map(|t| self.task_row(t)).collect::<Result<Vec<_>, _>>()?;
        store.set_rows(TASKS, rows)?;
        store.set_selected_row(TASKS, None)?;
        self.refresh_buttons(store)
    }

    fn task_row(&self, task: &Task) -> Result<RowValue, LogicError> {
        let row = RowValue::new(vec![
            CellValue::text(format!("prio_{}.png", task.priority)),
            CellValue::text(&task.name),
            due_date_cell(&task.due)?,
        ]);
        Ok(if task.priority == "high" && self.variant != Variant::DropRowColor {
            row.with_color(Color::Red)
        } else {
            row
        })
    }

    fn add_new_task(&self, store: &mut WidgetStateStore) -> Result<(), LogicError> {
        if self.variant == Variant::NoAppend {
            return Ok(());
        }
        let due = match self.variant {
            Variant::KeepDueDate => {
                store.rows(TASKS)?.last().map(|r| r.cells[2].clone()).unwrap_or(CellValue::text(""))
            }
            _ => CellValue::text(""),
        };
        let row = RowValue::new(vec![CellValue::text("prio_none.png"), CellValue::text("New Task"), due]);
        let index = store.push_row(TASKS, row)?;
        if self.variant != Variant::NoSelectOnAdd {
            store.set_selected_row(TASKS, Some(index))?;
        }
        self.refresh_buttons(store)
    }

    fn delete_task(&self, store: &mut WidgetStateStore) -> Result<(), LogicError> {
        if let Some(index) = store.selected_row(TASKS)? {
            store.remove_row(TASKS, index)?;
            store.set_selected_row(TASKS, None)?;
        }
        self.refresh_buttons(store)
    }

    /// DeleteTask is enabled iff the table has rows.
    fn refresh_buttons(&self, store: &mut WidgetStateStore) -> Result<(), LogicError> {
        let any = !store.rows(TASKS)?.is_empty();
        store.set_bool(DELETE_TASK, FeatureKind::Enabled, any)?;
        store.set_bool(ADD_NEW_TASK, FeatureKind::Enabled, true)?;
        Ok(())
    }
}

impl PresentationLogic for TaskListLogic {
    fn handle(&mut self, command: &str, args: &[ArgValue], store: &mut WidgetStateStore) -> Result<(), LogicError> {
        match command {
            "LoadView" => self.load_view(args, store),
            // The runner has already stored the selection.
            "TasksSelectRow" => self.refresh_buttons(store),
            "AddNewTaskClick" => self.add_new_task(store),
            "DeleteTaskClick" => self.delete_task(store),
            other => Err(format!("unknown command `{other}`").into()),
        }
    }
}

/// `2024-01-04` becomes `04.01.2024` with tooltip `4th January 2024`.
fn due_date_cell(iso: &str) -> Result<CellValue, LogicError> {
    if iso.is_empty() {
        return Ok(CellValue::text(""));
    }
    let date = NaiveDate::parse_from_str(iso, "%Y-%m-%d").map_err(|e| format!("bad due date `{iso}`: {e}"))?;
    let day = date.day();
    let suffix = match (day % 10, day % 100) {
        (_, 11..=13) => "th",
        (1, _) => "st",
        (2, _) => "nd",
        (3, _) => "rd",
        _ => "th",
    };
    let tooltip = format!("{day}{suffix} {}", date.format("%B %Y"));
    Ok(CellValue::text(date.format("%d.%m.%Y").to_string()).with_tooltip(tooltip))
}

/// Reads the `Priority`, `Name` and `Due Date` columns from a multiline or
/// json rendering.
fn parse_tasks(payload: &str) -> Result<Vec<Task>, LogicError> {
    let records: Vec<Vec<(String, String)>> = if payload.trim_start().starts_with('[') {
        let rows: Vec<serde_json::Map<String, serde_json::Value>> = serde_json::from_str(payload)?;
        rows.into_iter()
            .map(|row| row.into_iter().map(|(k, v)| (k, v.as_str().unwrap_or_default().to_string())).collect())
            .collect()
    } else {
        let mut lines = payload.lines().map(split_multiline);
        let header = lines.next().ok_or("empty task table")?;
        lines.map(|cells| header.iter().cloned().zip(cells).collect()).collect()
    };
    records
        .into_iter()
        .map(|fields| {
            let field = |name: &str| {
                fields
                    .iter()
                    .find(|(k, _)| k == name)
                    .map(|(_, v)| v.clone())
                    .ok_or_else(|| LogicError::from(format!("task table lacks a `{name}` column")))
            };
            Ok(Task { priority: field("Priority")?, name: field("Name")?, due: field("Due Date")? })
        })
        .collect()
}

/// Splits one multiline row on unescaped `|`, undoing `\|` and `\\`.
fn split_multiline(line: &str) -> Vec<String> {
    let mut cells = vec![String::new()];
    let mut chars = line.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => cells.last_mut().unwrap().extend(chars.next()),
            '|' => cells.push(String::new()),
            c => cells.last_mut().unwrap().push(c),
        }
    }
    cells.iter().map(|c| c.trim().to_string()).collect()
}

/// One context handed to a [`RecordingSetup`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProvidedContext {
    pub name: String,
    pub payload: String,
    pub delivery: Delivery,
}

/// A setup that keeps every context it receives. Clones share the log.
#[derive(Debug, Clone, Default)]
pub struct RecordingSetup {
    log: Arc<Mutex<Vec<ProvidedContext>>>,
}

impl RecordingSetup {
    pub fn provided(&self) -> Vec<ProvidedContext> {
        self.log.lock().expect("log not poisoned").clone()
    }
}

impl TestSetup for RecordingSetup {
    fn provide_context(&mut self, name: &str, payload: &str, delivery: Delivery) -> Result<(), LogicError> {
        if delivery == Delivery::File && !std::path::Path::new(payload).is_file() {
            return Err(format!("context file `{payload}` does not exist").into());
        }
        self.log.lock().expect("log not poisoned").push(ProvidedContext {
            name: name.to_string(),
            payload: payload.to_string(),
            delivery,
        });
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dates_get_ordinal_tooltips() {
        let tip = |iso| due_date_cell(iso).unwrap().tooltip.unwrap();
        assert_eq!(tip("2024-01-04"), "4th January 2024");
        assert_eq!(tip("2024-03-01"), "1st March 2024");
        assert_eq!(tip("2024-03-22"), "22nd March 2024");
        assert_eq!(tip("2024-03-13"), "13th March 2024");
        assert_eq!(tip("2024-12-31"), "31st December 2024");
        assert_eq!(due_date_cell("2024-01-15").unwrap().text, "15.01.2024");
        assert!(due_date_cell("2024-02-30").is_err());
    }

    #[test]
    fn multiline_and_json_read_the_same() {
        let multi = "Id | Priority | Name | Due Date\n1 | low | A \\| B | 2024-01-04";
        let json = r#"[{"Id":"1","Priority":"low","Name":"A | B","Due Date":"2024-01-04"}]"#;
        assert_eq!(parse_tasks(multi).unwrap(), parse_tasks(json).unwrap());
        assert_eq!(parse_tasks(multi).unwrap()[0].name, "A | B");
        assert!(parse_tasks("Id | Name\n1 | x").is_err());
    }

    #[test]
    fn ids_resolve() {
        for v in Variant::ALL {
            assert_eq!(variant_by_id(v.id()), Some(v));
        }
        assert_eq!(variant_by_id(BUGGY_ID), Some(Variant::NoSelectOnAdd));
        assert_eq!(variant_by_id("nope"), None);
    }
}
