use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use proptest::prelude::*;

use super::*;
use crate::config::GenConfig;
use crate::parser::{parse_test_suite, parse_view_model};

const CORPUS_VM: &str = include_str!("../../../../corpus/taskmanager/task_list.vmdsl");
const CORPUS_SUITE: &str = include_str!("../../../../corpus/taskmanager/task_list_tests.vmtest");

fn vm(text: &str) -> ViewModelDescription {
    parse_view_model(text, Path::new("v.vmdsl")).expect("description parses")
}

fn suite(text: &str) -> TestSuite {
    parse_test_suite(text, Path::new("s.vmtest")).expect("suite parses")
}

fn codes(diags: &[Diagnostic]) -> Vec<(&'static str, usize)> {
    diags.iter().map(|d| (d.code.as_str(), d.span.line)).collect()
}

fn resolve_err(desc: &str, suite_text: &str) -> Vec<(&'static str, usize)> {
    codes(&resolve(&suite(suite_text), &vm(desc)).expect_err("resolution fails"))
}

const SMALL_VM: &str = r#"viewmodel V {
  widgets {
    table T {
      columns {
        label "A"
        label "B"
      }
      supports selectedRow
    }
    button Go { supports enabled }
    checkbox Done
    textfield Name
  }
  commands {
    click on Go
    check on Done
    fillText on Name
    command Load(data: context, n: int)
  }
}
"#;

#[test]
fn corpus_links_cleanly() {
    let desc = vm(CORPUS_VM);
    assert!(check_description(&desc).is_empty());
    let linked = resolve(&suite(CORPUS_SUITE), &desc).expect("corpus resolves");
    let s = &linked.scenarios[0];
    assert_eq!(s.test_name, "loadTasksAndAddNew");
    assert_eq!(s.contexts.len(), 1);
    assert_eq!(s.actions.len(), 2);
    assert_eq!(s.actions[1].command(), "AddNewTaskClick");
    let LinkedAction::Custom { args, .. } = &s.actions[0] else { panic!("LoadView is custom") };
    let [LinkedArg::Context(ctx)] = args.as_slice() else { panic!("one context arg") };
    let ResolvedBody::DataTable(t) = &ctx.body else { panic!("data table") };
    assert_eq!(t.rows.len(), 2);
    assert_eq!(s.checks.len(), 3);
}

#[test]
fn resolution_is_idempotent_on_its_own_output() {
    let desc = vm(CORPUS_VM);
    let linked = resolve(&suite(CORPUS_SUITE), &desc).unwrap();
    let again = resolve(&linked.suite, &linked.description).unwrap();
    assert_eq!(linked, again);
}

#[test]
fn description_rules() {
    let bad = r#"viewmodel V {
  widgets {
    label L { supports text }
    button B { supports enabled, enabled }
    checkbox C { example text = "x" }
    textfield F { example text = true }
    table T { columns { label "A" label " A" } }
    button Z
  }
  commands {
    click on Missing
    fillText on Z
    command X(a: int, a: bool)
  }
}
"#;
    let got = codes(&check_description(&vm(bad)));
    assert_eq!(
        got,
        vec![("E102", 3), ("E106", 4), ("E102", 5), ("E105", 6), ("E106", 7), ("E101", 11), ("E103", 12), ("E106", 13),]
    );
}

#[test]
fn binding_subjects_must_exist() {
    let text = r#"viewmodel V bind {
  property Nope.enabled name = "x"
  property B.visible getter = "y"
} {
  widgets { button B }
  commands { }
}
"#;
    assert_eq!(codes(&check_description(&vm(text))), vec![("E101", 2), ("E102", 3)]);
}

#[test]
fn action_errors() {
    let text = r#"testsuite S for V {
  scenario "s" {
    given {
      text d """x"""
    }
    when {
      Missing()
      Load(d)
      Load(d, "three")
      Load(1, 2)
      Load(nowhere, 2)
      click Done
      click Ghost
    }
    then { }
  }
}
"#;
    assert_eq!(
        resolve_err(SMALL_VM, text),
        vec![("E103", 7), ("E104", 8), ("E105", 9), ("E105", 10), ("E107", 11), ("E103", 12), ("E101", 13)]
    );
}

#[test]
fn check_errors() {
    let text = r#"testsuite S for V {
  scenario "s" {
    given { }
    when { }
    then {
      button Go enabled true
      button Go enabled false
      button Go visible true
      label Go text "x"
      checkbox Missing checked true
      table T {
        ignore "Nope"
        rows {
          | A | B |
        }
      }
    }
  }
}
"#;
    assert_eq!(resolve_err(SMALL_VM, text), vec![("E106", 7), ("E102", 8), ("E101", 9), ("E101", 10), ("E110", 11)]);
}

#[test]
fn table_header_must_cover_columns() {
    let check = |body: &str| {
        let text = format!("testsuite S for V {{ scenario \"s\" {{ given {{ }} when {{ }} then {{\n{body}\n}} }} }}");
        resolve(&suite(&text), &vm(SMALL_VM)).map(|_| ()).map_err(|d| codes(&d))
    };
    assert!(check("table T { rows { | A | B | } }").is_ok());
    assert!(check("table T { ignore \"B\" rows { | A | } }").is_ok());
    assert_eq!(check("table T { rows { | A | } }").unwrap_err(), vec![("E110", 2)]);
    assert_eq!(check("table T { rows { | B | A | } selectedRow 0 }").map(|_| ()), Ok(()));
    assert_eq!(check("table T { ignore \"A\" rows { | A | B | } }").unwrap_err(), vec![("E110", 2)]);
    assert_eq!(
        check("table T { rows { | A | B |\n | x | y | [selected]\n | x | y | [selected]\n } }").unwrap_err(),
        vec![("E106", 2)]
    );
    assert_eq!(
        check("table T { rows { | A | B |\n | x | y | [selected]\n } selectedRow 0 }").unwrap_err(),
        vec![("E106", 2)]
    );
}

#[test]
fn selection_needs_the_feature() {
    let desc = r#"viewmodel V { widgets { table T { columns { label "A" } } } commands { } }"#;
    let text = "testsuite S for V { scenario \"s\" { given { } when { } then {\ntable T { rows { | A |\n | x | [selected]\n } }\n} } }";
    assert_eq!(resolve_err(desc, text), vec![("E102", 2)]);
}

#[test]
fn suite_target_must_match() {
    let text = "testsuite S for Other { }";
    assert_eq!(resolve_err(SMALL_VM, text), vec![("E101", 1)]);
}

#[test]
fn context_references() {
    let text = r#"testsuite S for V {
  scenario "one" {
    given {
      datatable base {
        | k |
        | v |
      }
    }
    when { Load(base, 1) }
    then { }
  }
  scenario "two" {
    given {
      use base
      use base as alias
    }
    when {
      Load(alias, 2)
      Load(base, 3)
    }
    then { }
  }
}
"#;
    let linked = resolve(&suite(text), &vm(SMALL_VM)).unwrap();
    let two = &linked.scenarios[1];
    assert_eq!(two.contexts.len(), 2);
    assert_eq!(two.contexts[0].body, two.contexts[1].body);
    assert_eq!(two.contexts[1].name, "alias");
}

#[test]
fn context_errors() {
    let text = r#"testsuite S for V {
  scenario "one" {
    given {
      text a """x"""
      use b as c
      use c as b
      use ghost
    }
    when { }
    then { }
  }
  scenario "two" {
    given {
      text a """y"""
    }
    when { }
    then { }
  }
}
"#;
    assert_eq!(resolve_err(SMALL_VM, text), vec![("E109", 5), ("E109", 6), ("E107", 7), ("E106", 14)]);
}

#[test]
fn test_names_must_not_collide() {
    let text = r#"testsuite S for V {
  scenario "Go now" { given { } when { } then { } }
  scenario "go-now" { given { } when { } then { } }
}
"#;
    assert_eq!(resolve_err(SMALL_VM, text), vec![("E106", 3)]);
}

#[test]
fn ignoring_a_column_drops_its_cells() {
    let linked = resolve(&suite(CORPUS_SUITE), &vm(CORPUS_VM)).unwrap();
    let Expectation::Rows(rows) = &linked.scenarios[0].checks[0].expectation else { panic!() };
    let narrowed = rows.with_ignored_column("Due Date");
    assert_eq!(narrowed.columns.len(), 2);
    assert!(narrowed.rows.iter().all(|r| r.cells.len() == 2));
    assert_eq!(narrowed.ignored_columns, vec!["Due Date".to_string()]);
    assert_eq!(rows.with_ignored_column("Unknown"), *rows);
}

#[test]
fn name_map_defaults_and_bindings() {
    let desc = vm(CORPUS_VM);
    let names = compute_name_map(&desc, &GenConfig::default()).unwrap();
    assert_eq!(names.type_name, "TaskListViewModel");
    assert_eq!(names.file_name, "TaskListViewModel");
    assert_eq!(names.controller_name, "TaskListViewModelController");
    let enabled = names.property("AddNewTask", FeatureKind::Enabled).unwrap();
    assert_eq!(enabled.property, "addNewTaskEnabled");
    assert_eq!(enabled.getter, "isAddNewTaskEnabled");
    assert_eq!(enabled.setter, "setAddNewTaskEnabled");
    let rows = names.property("Tasks", FeatureKind::Rows).unwrap();
    assert_eq!(rows.getter, "getTasksRows");
    let load = names.command("LoadView").unwrap();
    assert_eq!(load.method, "onLoadView");
    assert_eq!(load.param_object, "LoadViewParams");
    assert_eq!(names.command("AddNewTaskClick").unwrap().method, "onAddNewTaskClick");

    let cpp = compute_name_map(&desc, &GenConfig::default().with_target(crate::config::Target::Cpp)).unwrap();
    assert_eq!(cpp.file_name, "task_list_view_model");

    let bound = CORPUS_VM.replacen(
        "viewmodel TaskListViewModel {",
        "viewmodel TaskListViewModel bind {\n  typeName = \"TaskListVM\"\n  property Tasks.rows name = \"taskRows\"\n} {",
        1,
    );
    let names = compute_name_map(&vm(&bound), &GenConfig::default()).unwrap();
    assert_eq!(names.type_name, "TaskListVM");
    assert_eq!(names.file_name, "TaskListVM");
    let rows = names.property("Tasks", FeatureKind::Rows).unwrap();
    assert_eq!(rows.property, "taskRows");
    assert_eq!(rows.getter, "getTasksRows");
}

#[test]
fn name_collisions_are_reported() {
    let text = r#"viewmodel V bind {
  property B.enabled getter = "isCEnabled"
} {
  widgets {
    button B { supports enabled }
    button C { supports enabled }
  }
  commands { }
}
"#;
    let err = compute_name_map(&vm(text), &GenConfig::default()).unwrap_err();
    assert_eq!(codes(&err), vec![("E106", 6)]);
}

/// Reference graph over up to 6 names; `None` is a concrete body.
fn graph() -> impl Strategy<Value = Vec<Option<usize>>> {
    (1usize..=6).prop_flat_map(|n| proptest::collection::vec(proptest::option::of(0..n + 1), n))
}

/// What chasing from `start` must give, by plain reachability over the
/// successor function: a body, a missing name, or a repeated node.
fn oracle(edges: &[Option<usize>], start: usize) -> &'static str {
    let mut visited = BTreeSet::new();
    let mut at = start;
    loop {
        if at >= edges.len() {
            return "missing";
        }
        if !visited.insert(at) {
            return "cycle";
        }
        match edges[at] {
            None => return "body",
            Some(next) => at = next,
        }
    }
}

proptest! {
    #[test]
    fn cycle_detection_matches_reachability(edges in graph()) {
        let name = |i: usize| format!("c{i}");
        let mut given = String::new();
        for (i, e) in edges.iter().enumerate() {
            match e {
                None => given.push_str(&format!("      text {} \"\"\"v{i}\"\"\"\n", name(i))),
                Some(t) if *t == i => given.push_str(&format!("      use {} as {}\n", name(i), name(i) + "x")),
                Some(t) => given.push_str(&format!("      use {} as {}\n", name(*t), name(i))),
            }
        }
        // A self edge is written through a helper alias so it is not a plain import.
        let mut extra = String::new();
        for (i, e) in edges.iter().enumerate() {
            if *e == Some(i) {
                extra.push_str(&format!("      use {}x as {}\n", name(i), name(i)));
            }
        }
        let text = format!(
            "testsuite S for V {{\n  scenario \"s\" {{\n    given {{\n{given}{extra}    }}\n    when {{ }}\n    then {{ }}\n  }}\n}}\n"
        );
        let s = suite(&text);
        let mut sink = Sink { file: Path::new("s.vmtest"), diags: Vec::new() };
        let space = ContextSpace::build(&s, &mut sink);
        prop_assert!(sink.diags.is_empty());
        let mut want = BTreeMap::new();
        let mut got = BTreeMap::new();
        for i in 0..edges.len() {
            // Self edges run through `cix`, which is a reachability-preserving detour.
            want.insert(i, oracle(&edges, i));
            let outcome = match space.chase(&name(i)) {
                Ok(_) => "body",
                Err(ChaseError::Missing(_)) => "missing",
                Err(ChaseError::Cycle(_)) => "cycle",
            };
            got.insert(i, outcome);
        }
        prop_assert_eq!(want, got);
    }
}
