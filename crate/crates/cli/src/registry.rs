//! Compiled-in presentation logic and setups, selected by id.

use std::collections::BTreeMap;

use vimotest::runtime::{LogicFactory, PresentationLogic, SetupFactory, TestSetup};
use vimotest_taskmanager::{variant_by_id, RecordingSetup, TaskListLogic, Variant, BUGGY_ID};

pub struct Entry {
    pub logic: Box<LogicFactory<'static>>,
    pub setup: Box<SetupFactory<'static>>,
}

#[derive(Default)]
pub struct Registry {
    entries: BTreeMap<String, Entry>,
}

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    /// The task-manager logic under `taskmanager`, and its mutants.
    pub fn builtin() -> Registry {
        let mut registry = Registry::new();
        let ids = Variant::ALL.iter().map(|v| v.id()).chain([BUGGY_ID]);
        for id in ids {
            let variant = variant_by_id(id).expect("listed ids resolve");
            registry.register(
                id,
                move || Ok(Box::new(TaskListLogic::new(variant)) as Box<dyn PresentationLogic>),
                || Ok(Box::new(RecordingSetup::default()) as Box<dyn TestSetup>),
            );
        }
        registry
    }

    /// Replaces any entry already under `id`.
    pub fn register<L, S>(&mut self, id: &str, logic: L, setup: S)
    where
        L: Fn() -> Result<Box<dyn PresentationLogic>, vimotest::runtime::LogicError> + Sync + 'static,
        S: Fn() -> Result<Box<dyn TestSetup>, vimotest::runtime::LogicError> + Sync + 'static,
    {
        self.entries.insert(id.to_string(), Entry { logic: Box::new(logic), setup: Box::new(setup) });
    }

    pub fn get(&self, id: &str) -> Option<&Entry> {
        self.entries.get(id)
    }

    /// Sorted.
    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}
