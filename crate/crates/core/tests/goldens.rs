//! Emitted sources for the task-manager corpus, compared byte for byte.
//!
//! Run with `VIMOTEST_BLESS=1` to rewrite the files under `tests/goldens/`.

use std::path::{Path, PathBuf};

use vimotest::analyzer::resolve;
use vimotest::codegen::generate;
use vimotest::config::{GenConfig, Target};
use vimotest::parser::{parse_test_suite, parse_view_model};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/taskmanager")
}

fn emit(target: Target) -> Vec<(String, String)> {
    let dir = corpus();
    let vm_path = dir.join("task_list.vmdsl");
    let suite_path = dir.join("task_list_tests.vmtest");
    let desc = parse_view_model(&std::fs::read_to_string(&vm_path).unwrap(), &vm_path).unwrap();
    let suite = parse_test_suite(&std::fs::read_to_string(&suite_path).unwrap(), &suite_path).unwrap();
    let linked = resolve(&suite, &desc).unwrap();
    let config = GenConfig::default().with_target(target);
    generate(&desc, &[&linked], &config).unwrap().into_iter().map(|f| (f.path, f.contents)).collect()
}

fn check(target: Target, dir: &str, expected_files: &[&str]) {
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/goldens").join(dir);
    let files = emit(target);
    let names: Vec<&str> = files.iter().map(|(p, _)| p.as_str()).collect();
    assert_eq!(names, expected_files);
    let bless = std::env::var_os("VIMOTEST_BLESS").is_some_and(|v| v == "1");
    for (path, contents) in &files {
        let golden = golden_dir.join(path);
        if bless {
            std::fs::create_dir_all(golden.parent().unwrap()).unwrap();
            std::fs::write(&golden, contents).unwrap();
            continue;
        }
        let frozen =
            std::fs::read_to_string(&golden).unwrap_or_else(|e| panic!("missing golden {}: {e}", golden.display()));
        assert!(frozen == *contents, "{} differs from its golden file", golden.display());
    }
}

#[test]
fn java_matches_goldens() {
    check(Target::Java, "java", &["TaskListViewModel.java", "TaskListTestsTest.java"]);
}

#[test]
fn cpp_matches_goldens() {
    check(Target::Cpp, "cpp", &["task_list_view_model.hpp", "task_list_tests_test.cpp", "vimotest_assert.hpp"]);
}
