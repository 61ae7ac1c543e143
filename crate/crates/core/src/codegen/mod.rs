//! Source generation: one lowering to [`ir`], one emitter per target.
//!
//! Output is deterministic. Files are returned in a fixed order with `\n`
//! line endings, and nothing depends on time, environment or hash order.

mod cpp;
pub mod ir;
mod java;
mod lower;

use crate::analyzer::{compute_name_map, LinkedSuite};
use crate::config::{GenConfig, Target};
use crate::diagnostic::Diagnostic;
use crate::model::ViewModelDescription;

pub use cpp::{emit_cpp, ASSERT_HEADER};
pub use java::emit_java;
pub use lower::lower_to_ir;

/// A generated file, `path` relative to the output directory with `/`
/// separators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedFile {
    pub path: String,
    pub contents: String,
}

pub fn emit(unit: &ir::IrUnit, config: &GenConfig) -> Vec<GeneratedFile> {
    match config.target {
        Target::Java => emit_java(unit, config),
        Target::Cpp => emit_cpp(unit, config),
    }
}

/// Names, lowers and emits. Every suite must be linked against `desc`.
pub fn generate(
    desc: &ViewModelDescription,
    suites: &[&LinkedSuite],
    config: &GenConfig,
) -> Result<Vec<GeneratedFile>, Vec<Diagnostic>> {
    let names = compute_name_map(desc, config)?;
    let unit = lower_to_ir(desc, suites, &names, config);
    Ok(emit(&unit, config))
}

/// Line-oriented text builder with a fixed indent width.
struct Writer {
    buf: String,
    depth: usize,
    unit: &'static str,
}

impl Writer {
    fn new(unit: &'static str) -> Writer {
        Writer { buf: String::new(), depth: 0, unit }
    }

    fn line(&mut self, text: impl AsRef<str>) {
        let text = text.as_ref();
        if !text.is_empty() {
            for _ in 0..self.depth {
                self.buf.push_str(self.unit);
            }
            self.buf.push_str(text);
        }
        self.buf.push('\n');
    }

    /// At most one blank line in a row, and none right after an opening line.
    fn blank(&mut self) {
        if !self.buf.is_empty() && !self.buf.ends_with("\n\n") && !self.buf.ends_with("{\n") {
            self.buf.push('\n');
        }
    }

    fn open(&mut self, text: impl AsRef<str>) {
        self.line(format!("{} {{", text.as_ref()));
        self.depth += 1;
    }

    fn close_with(&mut self, text: &str) {
        self.depth -= 1;
        while self.buf.ends_with("\n\n") {
            self.buf.pop();
        }
        self.line(text);
    }

    fn close(&mut self) {
        self.close_with("}");
    }

    fn finish(self) -> String {
        self.buf
    }
}

/// Appends `_` to names a target reserves.
fn safe_name(name: &str, reserved: &[&str]) -> String {
    if reserved.contains(&name) {
        format!("{name}_")
    } else {
        name.to_string()
    }
}

#[cfg(test)]
mod tests;
