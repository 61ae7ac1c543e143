use std::path::Path;
use std::process::Command;

use super::ir::{ClassRole, IrUnit, Statement};
use super::*;
use crate::analyzer::resolve;
use crate::model::{Check, TestSuite};
use crate::parser::{parse_test_suite, parse_view_model};

const CORPUS_VM: &str = include_str!("../../../../corpus/taskmanager/task_list.vmdsl");
const CORPUS_SUITE: &str = include_str!("../../../../corpus/taskmanager/task_list_tests.vmtest");

fn vm(text: &str) -> ViewModelDescription {
    parse_view_model(text, Path::new("v.vmdsl")).expect("description parses")
}

fn suite(text: &str) -> TestSuite {
    parse_test_suite(text, Path::new("s.vmtest")).expect("suite parses")
}

fn unit_for(desc_text: &str, suite_text: Option<&str>, config: &GenConfig) -> IrUnit {
    let desc = vm(desc_text);
    let linked: Vec<LinkedSuite> =
        suite_text.map(|s| resolve(&suite(s), &desc).expect("suite resolves")).into_iter().collect();
    let refs: Vec<&LinkedSuite> = linked.iter().collect();
    let names = compute_name_map(&desc, config).expect("names");
    lower_to_ir(&desc, &refs, &names, config)
}

fn files_for(desc_text: &str, suite_text: Option<&str>, config: &GenConfig) -> Vec<GeneratedFile> {
    let desc = vm(desc_text);
    let linked: Vec<LinkedSuite> =
        suite_text.map(|s| resolve(&suite(s), &desc).expect("suite resolves")).into_iter().collect();
    let refs: Vec<&LinkedSuite> = linked.iter().collect();
    generate(&desc, &refs, config).expect("generation succeeds")
}

fn paths(files: &[GeneratedFile]) -> Vec<&str> {
    files.iter().map(|f| f.path.as_str()).collect()
}

fn contents<'a>(files: &'a [GeneratedFile], path: &str) -> &'a str {
    &files.iter().find(|f| f.path == path).unwrap_or_else(|| panic!("no {path}")).contents
}

fn both_targets() -> [GenConfig; 2] {
    [GenConfig::default().with_target(Target::Java), GenConfig::default().with_target(Target::Cpp)]
}

/// Assertions a suite implies, counted from the syntax tree alone.
fn oracle_assertions(suite: &TestSuite) -> usize {
    let mut total = 0;
    for scenario in &suite.scenarios {
        for check in &scenario.then {
            match check {
                Check::Widget(w) => total += w.features.len(),
                Check::Table(t) => {
                    total += 1;
                    for row in &t.rows {
                        for cell in row.cells.iter().filter(|c| !c.ignored) {
                            total += 1 + usize::from(cell.tooltip.is_some()) + usize::from(cell.color.is_some());
                        }
                        total += usize::from(row.color.is_some());
                    }
                    total += usize::from(t.rows.iter().any(|r| r.selected));
                    total += usize::from(t.selected_row.is_some());
                }
            }
        }
    }
    total
}

fn ir_assertions(unit: &IrUnit) -> usize {
    unit.suites.iter().flat_map(|s| &s.tests).flat_map(|t| &t.statements).filter(|s| s.is_assertion()).count()
}

const MULTI_VM: &str = r#"viewmodel Form {
  widgets {
    textfield Name
    button Save { supports enabled }
    table Items {
      columns { label "A" label "B" }
      supports selectedRow
    }
  }
  commands {
    command Submit(data: context, count: int, note: string)
    command Rename(name: string)
    command Reset()
    click on Save
  }
}
"#;

const MULTI_SUITE: &str = r#"testsuite FormTests for Form {
  scenario "first" {
    given { }
    when { Reset() }
    then { button Save enabled true }
  }
  scenario "second" {
    given { text note """hello""" }
    when {
      Submit(note, 3, "n")
      click Save
    }
    then {
      textfield Name text "x"
      table Items {
        ignore "B"
        rows {
          | A |
          | one [tooltip "t"] | [color red]
          | two [color blue] | [selected]
        }
      }
    }
  }
}
"#;

#[test]
fn corpus_ir_has_one_abstract_view_model() {
    let unit = unit_for(CORPUS_VM, Some(CORPUS_SUITE), &GenConfig::default());
    assert_eq!(unit.type_name, "TaskListViewModel");
    assert!(unit.controller.is_none());
    let class = unit.class("TaskListViewModel").expect("view model class");
    assert_eq!(class.role, ClassRole::ViewModel);
    assert!(class.is_abstract);
    let ops: Vec<&str> = class.operations.iter().map(|o| o.name.as_str()).collect();
    assert_eq!(ops, ["onLoadView", "onTasksSelectRow", "onAddNewTaskClick", "onDeleteTaskClick"]);
    assert_eq!(unit.suites.len(), 1);
    assert_eq!(unit.suites[0].tests.len(), 1);
    assert_eq!(unit.suites[0].tests[0].name, "loadTasksAndAddNew");
    assert!(matches!(unit.suites[0].tests[0].statements[0], Statement::Fixture));
}

#[test]
fn controller_takes_every_operation() {
    for config in both_targets() {
        let config = GenConfig { commands_on_view_model: false, generate_view_controller: true, ..config };
        let unit = unit_for(CORPUS_VM, Some(CORPUS_SUITE), &config);
        assert_eq!(unit.controller.as_deref(), Some("TaskListViewModelController"));
        assert!(unit.class("TaskListViewModel").unwrap().operations.is_empty());
        assert_eq!(unit.class("TaskListViewModelController").unwrap().operations.len(), 4);

        let files = files_for(CORPUS_VM, Some(CORPUS_SUITE), &config);
        let (vm_file, ctrl_file) = match config.target {
            Target::Java => ("TaskListViewModel.java", "TaskListViewModelController.java"),
            Target::Cpp => ("task_list_view_model.hpp", "task_list_view_model_controller.hpp"),
        };
        assert!(!contents(&files, vm_file).contains("onLoadView"));
        let ctrl = contents(&files, ctrl_file);
        for op in ["onLoadView", "onTasksSelectRow", "onAddNewTaskClick", "onDeleteTaskClick"] {
            assert!(ctrl.contains(op), "{ctrl_file} lacks {op}");
        }
    }
}

#[test]
fn no_suites_means_view_model_only() {
    assert_eq!(paths(&files_for(CORPUS_VM, None, &both_targets()[0])), ["TaskListViewModel.java"]);
    assert_eq!(paths(&files_for(CORPUS_VM, None, &both_targets()[1])), ["task_list_view_model.hpp"]);
}

#[test]
fn output_is_deterministic() {
    for config in both_targets() {
        let first = files_for(CORPUS_VM, Some(CORPUS_SUITE), &config);
        let second = files_for(CORPUS_VM, Some(CORPUS_SUITE), &config);
        assert_eq!(first, second);
        assert!(first.iter().all(|f| !f.contents.contains('\r') && f.contents.ends_with('\n')));
    }
}

#[test]
fn type_name_binding_replaces_every_use() {
    let bound = CORPUS_VM.replacen(
        "viewmodel TaskListViewModel {",
        "viewmodel TaskListViewModel bind {\n  typeName = \"TaskListVM\"\n} {",
        1,
    );
    let suite_text = CORPUS_SUITE;
    for config in both_targets() {
        let files = files_for(&bound, Some(suite_text), &config);
        let all: String = files.iter().map(|f| format!("{}\n{}", f.path, f.contents)).collect();
        assert!(all.contains("TaskListVM"));
        assert!(!all.contains("TaskListViewModel"), "{:?}", config.target);
    }
}

#[test]
fn parameter_objects_for_commands_with_parameters() {
    let config = GenConfig { parameter_object: true, ..GenConfig::default() };
    let unit = unit_for(MULTI_VM, Some(MULTI_SUITE), &config);
    let params: Vec<&str> = unit.params_of("Form").map(|c| c.name.as_str()).collect();
    assert_eq!(params, ["SubmitParams", "RenameParams"]);
    let submit = unit.class("SubmitParams").unwrap();
    assert_eq!(submit.properties.len(), 3);
    assert!(submit.properties.iter().all(|p| p.setter.is_none()));
    let form = unit.class("Form").unwrap();
    let op = |name: &str| form.operations.iter().find(|o| o.name == name).unwrap();
    assert_eq!(op("onSubmit").params.len(), 1);
    assert!(op("onReset").params.is_empty());
    assert!(op("onSaveClick").params.is_empty());

    for config in [config.clone().with_target(Target::Java), config.with_target(Target::Cpp)] {
        let files = files_for(MULTI_VM, Some(MULTI_SUITE), &config);
        let all: String = files.iter().map(|f| f.contents.as_str()).collect();
        assert!(!all.contains("ResetParams") && !all.contains("SaveClickParams"));
    }
}

#[test]
fn without_parameter_objects_there_are_none() {
    let unit = unit_for(MULTI_VM, Some(MULTI_SUITE), &GenConfig::default());
    assert_eq!(unit.params_of("Form").count(), 0);
    let form = unit.class("Form").unwrap();
    assert_eq!(form.operations.iter().find(|o| o.name == "onSubmit").unwrap().params.len(), 3);
}

#[test]
fn concrete_view_model_has_no_abstract_members() {
    for config in both_targets() {
        let config = GenConfig { abstract_view_model: false, ..config };
        let files = files_for(CORPUS_VM, Some(CORPUS_SUITE), &config);
        let vm_file = &files[0].contents;
        assert!(!vm_file.contains("= 0;"), "{vm_file}");
        assert!(!vm_file.contains("abstract"), "{vm_file}");
        assert!(vm_file.contains("onAddNewTaskClick"));
    }
}

#[test]
fn scenarios_become_tests_in_order() {
    let unit = unit_for(MULTI_VM, Some(MULTI_SUITE), &GenConfig::default());
    let names: Vec<&str> = unit.suites[0].tests.iter().map(|t| t.name.as_str()).collect();
    assert_eq!(names, ["first", "second"]);

    let java = files_for(MULTI_VM, Some(MULTI_SUITE), &both_targets()[0]);
    let test = contents(&java, "FormTestsTest.java");
    let first = test.find("void first()").expect("first test");
    let second = test.find("void second()").expect("second test");
    assert!(first < second);
    assert_eq!(test.matches("@Test").count(), 2);

    let cpp = files_for(MULTI_VM, Some(MULTI_SUITE), &both_targets()[1]);
    let test = contents(&cpp, "form_tests_test.cpp");
    assert!(test.find("void first()").unwrap() < test.find("void second()").unwrap());
    assert_eq!(test.matches("vimotest::run(").count(), 2);
}

#[test]
fn assertion_counts_match_the_syntax_tree() {
    for (desc, suite_text) in [(CORPUS_VM, CORPUS_SUITE), (MULTI_VM, MULTI_SUITE)] {
        let expected = oracle_assertions(&suite(suite_text));
        let unit = unit_for(desc, Some(suite_text), &GenConfig::default());
        assert_eq!(ir_assertions(&unit), expected);

        let java = files_for(desc, Some(suite_text), &both_targets()[0]);
        let test = java.iter().find(|f| f.path.ends_with("Test.java")).unwrap();
        assert_eq!(test.contents.matches("assertEquals(").count(), expected);

        let cpp = files_for(desc, Some(suite_text), &both_targets()[1]);
        let test = cpp.iter().find(|f| f.path.ends_with("_test.cpp")).unwrap();
        assert_eq!(test.contents.matches("VT_ASSERT_EQ(").count(), expected);
    }
    assert_eq!(oracle_assertions(&suite(CORPUS_SUITE)), 15);
}

#[test]
fn ir_is_free_of_target_syntax() {
    let config = GenConfig { parameter_object: true, ..GenConfig::default() };
    for (desc, suite_text) in [(CORPUS_VM, CORPUS_SUITE), (MULTI_VM, MULTI_SUITE)] {
        let json = serde_json::to_string(&unit_for(desc, Some(suite_text), &config)).unwrap();
        for word in [
            "public",
            "private",
            "void",
            "boolean",
            "std::",
            "#include",
            "@Test",
            "assertEquals",
            "VT_ASSERT",
            "OptionalInt",
            "size_t",
            "virtual",
            "abstract ",
            "List<",
            "String[]",
        ] {
            assert!(!json.contains(word), "IR mentions {word}");
        }
    }
}

#[test]
fn reserved_names_get_a_suffix() {
    let text = r#"viewmodel V {
  widgets { button Go }
  commands { command Class(new: int) click on Go }
}
"#;
    let files = files_for(text, None, &both_targets()[0]);
    assert!(files[0].contents.contains("long new_"), "{}", files[0].contents);
    let files = files_for(text, None, &both_targets()[1]);
    assert!(files[0].contents.contains("std::int64_t new_"), "{}", files[0].contents);
}

#[test]
fn file_delivery_writes_context_files() {
    let config = GenConfig { context_delivery: crate::config::Delivery::File, ..GenConfig::default() };
    let unit = unit_for(CORPUS_VM, Some(CORPUS_SUITE), &config);
    let files = &unit.suites[0].context_files;
    assert_eq!(files.len(), 1);
    assert_eq!(files[0].path, "contexts/loadTasksAndAddNew_sampleTasks.txt");
    assert!(files[0].contents.starts_with("Id | Priority | Name | Due Date"));
    let emitted = files_for(CORPUS_VM, Some(CORPUS_SUITE), &config);
    assert!(paths(&emitted).contains(&"contexts/loadTasksAndAddNew_sampleTasks.txt"));
}

#[test]
fn java_package_sets_directory_and_declaration() {
    let config = GenConfig { java_package: Some("org.tasks.ui".into()), ..GenConfig::default() };
    let files = files_for(CORPUS_VM, Some(CORPUS_SUITE), &config);
    assert_eq!(paths(&files), ["org/tasks/ui/TaskListViewModel.java", "org/tasks/ui/TaskListTestsTest.java"]);
    assert!(files.iter().all(|f| f.contents.starts_with("package org.tasks.ui;\n")));
}

#[test]
fn cpp_namespace_wraps_declarations() {
    let config = GenConfig { cpp_namespace: Some("app::ui".into()), ..GenConfig::default() }.with_target(Target::Cpp);
    let files = files_for(CORPUS_VM, Some(CORPUS_SUITE), &config);
    assert!(contents(&files, "task_list_view_model.hpp").contains("namespace app::ui {"));
    assert!(contents(&files, "task_list_tests_test.cpp").contains("using namespace app::ui;"));
}

/// Compiles the generated C++ with a hand-written implementation when a
/// compiler is on the path; the suite must pass.
#[test]
fn generated_cpp_compiles_and_passes() {
    let Some(cxx) = ["g++", "clang++"].into_iter().find(|c| Command::new(c).arg("--version").output().is_ok()) else {
        eprintln!("no C++ compiler, skipping");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    for file in files_for(CORPUS_VM, Some(CORPUS_SUITE), &both_targets()[1]) {
        std::fs::write(dir.path().join(&file.path), file.contents).unwrap();
    }
    std::fs::write(dir.path().join("task_list_tests_setup.hpp"), CPP_SETUP).unwrap();
    let out = Command::new(cxx)
        .current_dir(dir.path())
        .args(["-std=c++17", "-Wall", "-Wextra", "-Werror", "task_list_tests_test.cpp", "-o", "suite"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(dir.path().join("suite")).current_dir(dir.path()).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "{stdout}");
    assert!(stdout.contains("PASS loadTasksAndAddNew"), "{stdout}");
}

const CPP_SETUP: &str = include_str!("testdata/task_list_tests_setup.hpp");
