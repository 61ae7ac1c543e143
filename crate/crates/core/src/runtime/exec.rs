use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use tempfile::NamedTempFile;

use crate::analyzer::{CheckValue, Expectation, LinkedAction, LinkedArg, LinkedScenario, LinkedSuite, ResolvedBody};
use crate::config::{Delivery, GenConfig};
use crate::model::{CommandKind, FeatureKind, Literal};

use super::render::render_context;
use super::rows::evaluate_rows_check;
use super::store::WidgetStateStore;
use super::{ArgValue, Aspect, Failure, LogicError, PresentationLogic, ScenarioResult, Status, TestSetup};

pub type LogicFactory<'a> = dyn Fn() -> Result<Box<dyn PresentationLogic>, LogicError> + Sync + 'a;
pub type SetupFactory<'a> = dyn Fn() -> Result<Box<dyn TestSetup>, LogicError> + Sync + 'a;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RunMode {
    #[default]
    Sequential,
    /// Scenarios on up to this many threads. Results keep declaration order.
    Parallel(usize),
}

fn literal_arg(l: &Literal) -> ArgValue {
    match l {
        Literal::Bool(b) => ArgValue::Bool(*b),
        Literal::Int(i) => ArgValue::Int(*i),
        Literal::Str(s) => ArgValue::Text(s.clone()),
    }
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic with a non-string payload".to_string()
    }
}

/// Runs `f`, turning both errors and panics into a message.
fn guarded<T>(what: &str, f: impl FnOnce() -> Result<T, LogicError>) -> Result<T, String> {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => Ok(v),
        Ok(Err(e)) => Err(format!("{what}: {e}")),
        Err(p) => Err(format!("{what} panicked: {}", panic_message(p))),
    }
}

/// Temp files live until the scenario ends.
struct Deliveries {
    files: Vec<NamedTempFile>,
}

impl Deliveries {
    fn write(&mut self, payload: &str) -> Result<String, String> {
        let mut file = NamedTempFile::new().map_err(|e| format!("cannot create context file: {e}"))?;
        file.write_all(payload.as_bytes()).map_err(|e| format!("cannot write context file: {e}"))?;
        let path = file.path().to_string_lossy().into_owned();
        self.files.push(file);
        Ok(path)
    }
}

fn run_phases(
    suite: &LinkedSuite,
    scenario: &LinkedScenario,
    logic: &mut dyn PresentationLogic,
    setup: &mut dyn TestSetup,
    config: &GenConfig,
) -> Result<Vec<Failure>, String> {
    let mut store = WidgetStateStore::from_description(&suite.description);
    let base = suite.base_dir();
    let render = |ctx| render_context(ctx, config.context_format, base).map_err(|e| e.to_string());
    let mut deliveries = Deliveries { files: Vec::new() };

    for ctx in &scenario.contexts {
        let payload = match (config.context_delivery, &ctx.body) {
            (Delivery::Inline, _) => render(ctx)?,
            // A file context is already a file: pass where it is.
            (Delivery::File, ResolvedBody::File(p)) => {
                let path = base.join(p);
                let abs = std::fs::canonicalize(&path)
                    .map_err(|e| format!("cannot read context file `{}`: {e}", path.display()))?;
                abs.to_string_lossy().into_owned()
            }
            (Delivery::File, _) => deliveries.write(&render(ctx)?)?,
        };
        guarded(&format!("test setup for `{}`", ctx.name), || {
            setup.provide_context(ctx.name.as_str(), &payload, config.context_delivery)
        })?;
    }

    for action in &scenario.actions {
        let args = match action {
            LinkedAction::Widget { kind, target, arg, .. } => {
                let t = target.as_str();
                let effect = match (kind, arg) {
                    (CommandKind::Check, Some(Literal::Bool(b))) => store.set_bool(t, FeatureKind::Checked, *b),
                    (CommandKind::FillText, Some(Literal::Str(s))) => store.set_text(t, s.clone()),
                    (CommandKind::SelectRow, Some(Literal::Int(i))) => {
                        store.set_selected_row(t, Some(usize::try_from(*i).unwrap_or(usize::MAX)))
                    }
                    _ => Ok(()),
                };
                effect.map_err(|e| format!("`{}`: {e}", action.command()))?;
                arg.iter().map(literal_arg).collect::<Vec<_>>()
            }
            LinkedAction::Custom { args, .. } => args
                .iter()
                .map(|a| match a {
                    LinkedArg::Literal(l) => Ok(literal_arg(l)),
                    LinkedArg::Context(ctx) => render(ctx).map(ArgValue::Text),
                })
                .collect::<Result<Vec<_>, String>>()?,
        };
        let command = action.command().as_str();
        guarded(&format!("command `{command}`"), || logic.handle(command, &args, &mut store))?;
    }

    let mut failures = Vec::new();
    for check in &scenario.checks {
        failures.extend(evaluate(check, &store).map_err(|e| e.to_string())?);
    }
    Ok(failures)
}

fn evaluate(check: &CheckValue, store: &WidgetStateStore) -> Result<Vec<Failure>, super::StoreError> {
    let widget = check.widget.as_str();
    let single = |expected: String, actual: String| {
        if expected == actual {
            Vec::new()
        } else {
            vec![Failure {
                widget: widget.to_string(),
                feature: check.feature,
                row_index: None,
                column_title: None,
                aspect: if check.feature == FeatureKind::SelectedRow { Aspect::Selected } else { Aspect::Value },
                expected,
                actual,
            }]
        }
    };
    let index = |i: Option<usize>| i.map_or_else(|| "none".to_string(), |i| i.to_string());
    Ok(match &check.expectation {
        Expectation::Bool(b) => single(b.to_string(), store.bool(widget, check.feature)?.to_string()),
        Expectation::Text(t) => single(t.clone(), store.text(widget)?.to_string()),
        Expectation::SelectedRow(s) => single(index(*s), index(store.selected_row(widget)?)),
        Expectation::Rows(rows) => evaluate_rows_check(widget, rows, store.rows(widget)?, store.selected_row(widget)?),
    })
}

/// Runs one scenario on a fresh store.
pub fn execute_scenario(
    suite: &LinkedSuite,
    scenario: &LinkedScenario,
    logic: &mut dyn PresentationLogic,
    setup: &mut dyn TestSetup,
    config: &GenConfig,
) -> ScenarioResult {
    let start = Instant::now();
    let outcome = run_phases(suite, scenario, logic, setup, config);
    finish(scenario, outcome, start)
}

fn finish(scenario: &LinkedScenario, outcome: Result<Vec<Failure>, String>, start: Instant) -> ScenarioResult {
    let (status, failures, error) = match outcome {
        Ok(f) if f.is_empty() => (Status::Passed, f, None),
        Ok(f) => (Status::Failed, f, None),
        Err(e) => (Status::Error, Vec::new(), Some(e)),
    };
    ScenarioResult {
        description: scenario.description.clone(),
        status,
        failures,
        error,
        duration_millis: start.elapsed().as_millis() as u64,
    }
}

fn run_one(
    suite: &LinkedSuite,
    scenario: &LinkedScenario,
    logic: &LogicFactory<'_>,
    setup: &SetupFactory<'_>,
    config: &GenConfig,
) -> ScenarioResult {
    let start = Instant::now();
    let instances = guarded("logic factory", logic).and_then(|l| Ok((l, guarded("setup factory", setup)?)));
    match instances {
        Ok((mut l, mut s)) => execute_scenario(suite, scenario, l.as_mut(), s.as_mut(), config),
        Err(e) => finish(scenario, Err(e), start),
    }
}

/// One result per scenario, in declaration order.
pub fn run_suite(
    suite: &LinkedSuite,
    logic: &LogicFactory<'_>,
    setup: &SetupFactory<'_>,
    config: &GenConfig,
    mode: RunMode,
) -> Vec<ScenarioResult> {
    let scenarios = &suite.scenarios;
    let threads = match mode {
        RunMode::Sequential => 1,
        RunMode::Parallel(n) => n.max(1).min(scenarios.len().max(1)),
    };
    if threads == 1 {
        return scenarios.iter().map(|s| run_one(suite, s, logic, setup, config)).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<ScenarioResult>>> = Mutex::new(vec![None; scenarios.len()]);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(s) = scenarios.get(i) else { break };
                let result = run_one(suite, s, logic, setup, config);
                slots.lock().expect("no poisoned slots")[i] = Some(result);
            });
        }
    });
    slots.into_inner().expect("no poisoned slots").into_iter().map(|r| r.expect("every slot filled")).collect()
}
