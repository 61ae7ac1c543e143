//! Finding, parsing and linking the source files named on the command line.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use vimotest::analyzer::{check_description, resolve, LinkedSuite};
use vimotest::diagnostic::sort_diagnostics;
use vimotest::model::{TestSuite, ViewModelDescription};
use vimotest::parser::{parse_file, SourceFile};
use vimotest::Diagnostic;

/// Why a workspace could not be built.
#[derive(Debug)]
pub enum LoadError {
    /// Bad invocation or missing inputs.
    Usage(String),
    /// Sorted, without duplicates.
    Diagnostics(Vec<Diagnostic>),
}

/// Every description with the suites that target it, in path order.
pub struct Workspace {
    pub units: Vec<Unit>,
}

pub struct Unit {
    pub description: ViewModelDescription,
    pub suites: Vec<LinkedSuite>,
}

fn is_source(path: &Path) -> bool {
    matches!(path.extension().and_then(|e| e.to_str()), Some("vmdsl" | "vmtest"))
}

/// Files named directly must be sources; directories are searched for them.
fn collect(paths: &[PathBuf]) -> Result<Vec<PathBuf>, LoadError> {
    if paths.is_empty() {
        return Err(LoadError::Usage("no input paths given".into()));
    }
    let mut files = Vec::new();
    for path in paths {
        if path.is_dir() {
            for entry in walkdir::WalkDir::new(path).sort_by_file_name() {
                let entry = entry.map_err(|e| LoadError::Usage(format!("cannot read {}: {e}", path.display())))?;
                if entry.file_type().is_file() && is_source(entry.path()) {
                    files.push(entry.into_path());
                }
            }
        } else if path.is_file() {
            if !is_source(path) {
                return Err(LoadError::Usage(format!("{} is neither a .vmdsl nor a .vmtest file", path.display())));
            }
            files.push(path.clone());
        } else {
            return Err(LoadError::Usage(format!("{} does not exist", path.display())));
        }
    }
    files.sort();
    files.dedup();
    Ok(files)
}

fn finish(mut diags: Vec<Diagnostic>) -> Vec<Diagnostic> {
    sort_diagnostics(&mut diags);
    diags.dedup_by(|a, b| {
        a.file == b.file && a.span.offset == b.span.offset && a.code == b.code && a.message == b.message
    });
    diags
}

/// Parses descriptions before suites and links every suite to the
/// description its `for` clause names.
pub fn load(paths: &[PathBuf]) -> Result<Workspace, LoadError> {
    let files = collect(paths)?;
    let mut descriptions: Vec<ViewModelDescription> = Vec::new();
    let mut suites: Vec<TestSuite> = Vec::new();
    let mut diags = Vec::new();
    for ext in ["vmdsl", "vmtest"] {
        for file in files.iter().filter(|f| f.extension().is_some_and(|e| e == ext)) {
            let text = std::fs::read_to_string(file)
                .map_err(|e| LoadError::Usage(format!("cannot read {}: {e}", file.display())))?;
            match parse_file(&text, file).expect("only source files are collected") {
                Ok(SourceFile::ViewModel(d)) => descriptions.push(d),
                Ok(SourceFile::Suite(s)) => suites.push(s),
                Err(mut d) => diags.append(&mut d),
            }
        }
    }
    if !diags.is_empty() {
        return Err(LoadError::Diagnostics(finish(diags)));
    }

    let mut by_name: HashMap<String, usize> = HashMap::new();
    for (i, d) in descriptions.iter().enumerate() {
        if let Some(first) = by_name.insert(d.name.to_string(), i) {
            return Err(LoadError::Usage(format!(
                "viewmodel `{}` is described twice, in {} and {}",
                d.name,
                descriptions[first].source.display(),
                d.source.display()
            )));
        }
    }
    let mut units: Vec<Unit> = Vec::new();
    for d in &descriptions {
        diags.extend(check_description(d));
    }
    let mut linked: Vec<Vec<LinkedSuite>> = descriptions.iter().map(|_| Vec::new()).collect();
    for s in &suites {
        let Some(&i) = by_name.get(s.target.as_str()) else {
            return Err(LoadError::Usage(format!(
                "{}: suite `{}` targets viewmodel `{}`, which no input describes",
                s.source.display(),
                s.name,
                s.target
            )));
        };
        match resolve(s, &descriptions[i]) {
            Ok(l) => linked[i].push(l),
            Err(mut d) => diags.append(&mut d),
        }
    }
    if !diags.is_empty() {
        return Err(LoadError::Diagnostics(finish(diags)));
    }
    for (description, suites) in descriptions.into_iter().zip(linked) {
        units.push(Unit { description, suites });
    }
    Ok(Workspace { units })
}

impl Workspace {
    pub fn suites(&self) -> impl Iterator<Item = &LinkedSuite> {
        self.units.iter().flat_map(|u| &u.suites)
    }
}
