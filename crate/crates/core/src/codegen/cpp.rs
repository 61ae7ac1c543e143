//! C++17 headers and a self-contained test program.

use std::collections::BTreeSet;

use crate::analyzer::snake_case;
use crate::config::GenConfig;

use super::ir::*;
use super::{safe_name, GeneratedFile, Writer};

const RESERVED: &[&str] = &[
    "alignas",
    "alignof",
    "and",
    "and_eq",
    "asm",
    "auto",
    "bitand",
    "bitor",
    "bool",
    "break",
    "case",
    "catch",
    "char",
    "class",
    "compl",
    "const",
    "constexpr",
    "const_cast",
    "continue",
    "decltype",
    "default",
    "delete",
    "do",
    "double",
    "dynamic_cast",
    "else",
    "enum",
    "explicit",
    "export",
    "extern",
    "false",
    "float",
    "for",
    "friend",
    "goto",
    "if",
    "inline",
    "int",
    "long",
    "mutable",
    "namespace",
    "new",
    "noexcept",
    "not",
    "not_eq",
    "nullptr",
    "operator",
    "or",
    "or_eq",
    "private",
    "protected",
    "public",
    "register",
    "reinterpret_cast",
    "return",
    "short",
    "signed",
    "sizeof",
    "static",
    "static_assert",
    "static_cast",
    "struct",
    "switch",
    "template",
    "this",
    "thread_local",
    "throw",
    "true",
    "try",
    "typedef",
    "typeid",
    "typename",
    "union",
    "unsigned",
    "using",
    "virtual",
    "void",
    "volatile",
    "wchar_t",
    "while",
    "xor",
    "xor_eq",
    "main",
    "setup",
    "viewModel",
    "controller",
];

/// Minimal assertion support for generated tests. Fixed text.
pub const ASSERT_HEADER: &str = r#"#pragma once

#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace vimotest {

inline int& failure_count() {
    static int count = 0;
    return count;
}

inline int& failed_tests() {
    static int count = 0;
    return count;
}

template <typename T>
std::string show(const T& value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

inline std::string show(bool value) {
    return value ? "true" : "false";
}

template <typename T>
std::string show(const std::optional<T>& value) {
    return value ? show(*value) : std::string("none");
}

template <typename E, typename A>
bool assert_eq(const E& expected, const A& actual, const char* message, const char* file, int line) {
    if (expected == actual) {
        return true;
    }
    ++failure_count();
    std::cerr << file << ":" << line << ": " << message << ": expected " << show(expected) << ", actual "
              << show(actual) << "\n";
    return false;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void run(const char* name, void (*test)()) {
    const int before = failure_count();
    test();
    const bool passed = failure_count() == before;
    if (!passed) {
        ++failed_tests();
    }
    std::cout << (passed ? "PASS " : "FAIL ") << name << "\n";
}

inline int report() {
    std::cout << failed_tests() << " failed test(s), " << failure_count() << " failed assertion(s)\n";
    return failure_count() == 0 ? 0 : 1;
}

}  // namespace vimotest

#define VT_ASSERT_EQ(expected, actual, msg) \
    ::vimotest::assert_eq((expected), (actual), (msg), __FILE__, __LINE__)
"#;

fn name(n: &str) -> String {
    safe_name(n, RESERVED)
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => out.push_str(&format!("\\{:03o}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn value_ty(t: &IrType) -> String {
    match t {
        IrType::Bool => "bool".into(),
        IrType::String => "std::string".into(),
        IrType::Int => "std::int64_t".into(),
        IrType::Index => "std::size_t".into(),
        IrType::RowList => "std::vector<Row>".into(),
        IrType::OptIndex => "std::optional<std::size_t>".into(),
        IrType::Named(n) => n.clone(),
    }
}

/// By value for scalars, by const reference for everything else.
fn param_ty(t: &IrType) -> String {
    match t {
        IrType::Bool | IrType::Int | IrType::Index | IrType::OptIndex => value_ty(t),
        _ => format!("const {}&", value_ty(t)),
    }
}

fn includes_for<'a>(types: impl Iterator<Item = &'a IrType>, rows: bool) -> BTreeSet<&'static str> {
    let mut inc = BTreeSet::new();
    if rows {
        inc.extend(["<optional>", "<string>", "<vector>"]);
    }
    for t in types {
        match t {
            IrType::String | IrType::RowList => {
                inc.insert("<string>");
                inc.insert("<utility>");
            }
            IrType::Int => {
                inc.insert("<cstdint>");
            }
            IrType::Index => {
                inc.insert("<cstddef>");
            }
            IrType::OptIndex => {
                inc.insert("<cstddef>");
                inc.insert("<optional>");
            }
            _ => {}
        }
    }
    inc
}

fn stem(n: &str) -> String {
    snake_case(n)
}

pub fn emit_cpp(unit: &IrUnit, config: &GenConfig) -> Vec<GeneratedFile> {
    let vm_header = format!("{}.hpp", unit.file_name);
    let mut files = vec![GeneratedFile { path: vm_header.clone(), contents: view_model(unit, config) }];
    let controller_header = unit.controller.as_ref().map(|_| format!("{}_controller.hpp", unit.file_name));
    if let Some(h) = &controller_header {
        files.push(GeneratedFile { path: h.clone(), contents: controller_file(unit, config, &vm_header) });
    }
    let mut any_tests = false;
    for suite in unit.suites.iter().filter(|s| !s.tests.is_empty()) {
        any_tests = true;
        let header = controller_header.as_deref().unwrap_or(&vm_header);
        files.push(GeneratedFile {
            path: format!("{}_test.cpp", stem(&suite.name)),
            contents: test_file(unit, suite, config, header),
        });
        for f in &suite.context_files {
            files.push(GeneratedFile { path: f.path.clone(), contents: f.contents.clone() });
        }
    }
    if any_tests {
        files.push(GeneratedFile { path: "vimotest_assert.hpp".into(), contents: ASSERT_HEADER.into() });
    }
    files
}

fn open_namespace(w: &mut Writer, config: &GenConfig) {
    if let Some(ns) = &config.cpp_namespace {
        w.line(format!("namespace {ns} {{"));
        w.blank();
    }
}

fn close_namespace(w: &mut Writer, config: &GenConfig) {
    if let Some(ns) = &config.cpp_namespace {
        w.blank();
        w.line(format!("}}  // namespace {ns}"));
    }
}

fn include_block(w: &mut Writer, system: &BTreeSet<&str>, local: &[&str]) {
    for i in system {
        w.line(format!("#include {i}"));
    }
    if !system.is_empty() && !local.is_empty() {
        w.blank();
    }
    for l in local {
        w.line(format!("#include \"{l}\""));
    }
    w.blank();
}

fn view_model(unit: &IrUnit, config: &GenConfig) -> String {
    let vm = unit.class(&unit.type_name).expect("unit has a view model");
    let params: Vec<&IrClass> = unit.params_of(&vm.name).collect();
    let types = vm
        .properties
        .iter()
        .map(|p| &p.ty)
        .chain(vm.operations.iter().flat_map(|o| o.params.iter().map(|p| &p.ty)))
        .chain(params.iter().flat_map(|c| c.properties.iter().map(|p| &p.ty)));
    let mut w = Writer::new("    ");
    w.line("#pragma once");
    w.blank();
    include_block(&mut w, &includes_for(types, unit.has_rows()), &[]);
    open_namespace(&mut w, config);
    w.open(format!("class {}", vm.name));
    w.depth -= 1;
    w.line("public:");
    w.depth += 1;
    if unit.has_rows() {
        w.open("struct Cell");
        w.line("std::string text;");
        w.line("std::optional<std::string> tooltip;");
        w.line("std::string color = \"none\";");
        w.close_with("};");
        w.blank();
        w.open("struct Row");
        w.line("std::vector<Cell> cells;");
        w.line("std::string color = \"none\";");
        w.close_with("};");
        w.blank();
    }
    for p in &params {
        params_struct(&mut w, p);
    }
    w.line(format!("virtual ~{}() = default;", vm.name));
    for p in &vm.properties {
        let field = format!("{}_", p.name);
        w.blank();
        let getter_ty = match p.ty {
            IrType::String | IrType::RowList => format!("const {}&", value_ty(&p.ty)),
            _ => value_ty(&p.ty),
        };
        w.line(format!("{getter_ty} {}() const {{ return {field}; }}", p.getter));
        if let Some(setter) = &p.setter {
            let body = match p.ty {
                IrType::String | IrType::RowList => format!("{field} = std::move(value);"),
                _ => format!("{field} = value;"),
            };
            w.line(format!("void {setter}({} value) {{ {body} }}", value_ty(&p.ty)));
        }
    }
    operations(&mut w, vm);
    if !vm.properties.is_empty() {
        w.blank();
        w.depth -= 1;
        w.line("private:");
        w.depth += 1;
        for p in &vm.properties {
            let init = match p.initial.as_ref() {
                Some(Expr::Bool(b)) => format!(" = {b}"),
                Some(Expr::Str(s)) if !s.is_empty() => format!(" = {}", quote(s)),
                _ => String::new(),
            };
            w.line(format!("{} {}_{init};", value_ty(&p.ty), p.name));
        }
    }
    w.close_with("};");
    close_namespace(&mut w, config);
    w.finish()
}

fn params_struct(w: &mut Writer, p: &IrClass) {
    w.open(format!("struct {}", p.name));
    for f in &p.properties {
        let init = match f.ty {
            IrType::Bool => " = false",
            IrType::Int | IrType::Index => " = 0",
            _ => "",
        };
        w.line(format!("{} {}{init};", value_ty(&f.ty), name(&f.name)));
    }
    w.close_with("};");
    w.blank();
}

fn operations(w: &mut Writer, class: &IrClass) {
    for op in &class.operations {
        w.blank();
        if let Some(doc) = &op.doc {
            w.line(format!("/// {doc}"));
        }
        let params: Vec<String> = op
            .params
            .iter()
            .map(|p| {
                if op.is_abstract {
                    format!("{} {}", param_ty(&p.ty), name(&p.name))
                } else {
                    format!("{} /*{}*/", param_ty(&p.ty), p.name)
                }
            })
            .collect();
        let tail = if op.is_abstract { " = 0;" } else { " {}" };
        w.line(format!("virtual void {}({}){tail}", op.name, params.join(", ")));
    }
}

fn controller_file(unit: &IrUnit, config: &GenConfig, vm_header: &str) -> String {
    let cname = unit.controller.as_deref().expect("controller requested");
    let c = unit.class(cname).expect("controller class lowered");
    let params: Vec<&IrClass> = unit.params_of(cname).collect();
    let types = c
        .operations
        .iter()
        .flat_map(|o| o.params.iter().map(|p| &p.ty))
        .chain(params.iter().flat_map(|c| c.properties.iter().map(|p| &p.ty)));
    let mut w = Writer::new("    ");
    w.line("#pragma once");
    w.blank();
    include_block(&mut w, &includes_for(types, false), &[vm_header]);
    open_namespace(&mut w, config);
    let vm = &unit.type_name;
    w.open(format!("class {cname}"));
    w.depth -= 1;
    w.line("public:");
    w.depth += 1;
    for p in &params {
        params_struct(&mut w, p);
    }
    w.line(format!("explicit {cname}({vm}& viewModel) : viewModel_(viewModel) {{}}"));
    w.line(format!("virtual ~{cname}() = default;"));
    operations(&mut w, c);
    w.blank();
    w.depth -= 1;
    w.line("protected:");
    w.depth += 1;
    w.line(format!("{vm}& viewModel_;"));
    w.close_with("};");
    close_namespace(&mut w, config);
    w.finish()
}

fn receiver(r: Receiver) -> &'static str {
    match r {
        Receiver::ViewModel => "viewModel",
        Receiver::Controller => "controller",
    }
}

fn expr(e: &Expr) -> String {
    let cell = |rows: &str, row: usize, column: usize| format!("{}.at({row}).cells.at({column})", name(rows));
    match e {
        Expr::Str(s) => quote(s),
        Expr::Bool(b) => b.to_string(),
        Expr::Int(i64::MIN) => "(-9223372036854775807 - 1)".into(),
        Expr::Int(i) => format!("std::int64_t{{{i}}}"),
        Expr::Index(i) => format!("std::size_t{{{i}}}"),
        Expr::OptIndex(Some(i)) => format!("std::optional<std::size_t>({i})"),
        Expr::OptIndex(None) => "std::optional<std::size_t>()".into(),
        Expr::EmptyRows => "{}".into(),
        Expr::Local(n) => name(n),
        Expr::ReadFile(p) => format!("vimotest::read_file({})", quote(p)),
        Expr::NewParams { owner, class, args } => {
            let args: Vec<String> = args.iter().map(expr).collect();
            format!("{owner}::{class}{{{}}}", args.join(", "))
        }
        Expr::Get { receiver: r, getter } => format!("{}->{getter}()", receiver(*r)),
        Expr::MatrixRowCount { matrix } => format!("{matrix}.size()"),
        Expr::MatrixCell { matrix, row, column } => format!("{matrix}[{row}][{column}]"),
        Expr::RowCount { rows } => format!("{}.size()", name(rows)),
        Expr::CellText { rows, row, column } => format!("{}.text", cell(rows, *row, *column)),
        Expr::CellTooltip { rows, row, column } => {
            format!("{}.tooltip.value_or({})", cell(rows, *row, *column), quote(crate::runtime::NO_TOOLTIP))
        }
        Expr::CellColor { rows, row, column } => format!("{}.color", cell(rows, *row, *column)),
        Expr::RowColor { rows, row } => format!("{}.at({row}).color", name(rows)),
    }
}

fn test_file(unit: &IrUnit, suite: &IrSuite, config: &GenConfig, header: &str) -> String {
    let mut w = Writer::new("    ");
    let setup_header = format!("{}_setup.hpp", stem(&suite.name));
    let local = [header, setup_header.as_str(), "vimotest_assert.hpp"];
    let system: BTreeSet<&str> = ["<cstddef>", "<cstdint>", "<optional>", "<string>", "<vector>"].into();
    include_block(&mut w, &system, &local);
    if let Some(ns) = &config.cpp_namespace {
        w.line(format!("using namespace {ns};"));
        w.blank();
    }
    w.line("namespace {");
    for t in &suite.tests {
        w.blank();
        w.open(format!("void {}()", name(&t.name)));
        for s in &t.statements {
            statement(&mut w, s, unit, suite);
        }
        w.close();
    }
    w.blank();
    w.line("}  // namespace");
    w.blank();
    w.open("int main()");
    for t in &suite.tests {
        w.line(format!("vimotest::run({}, {});", quote(&t.name), name(&t.name)));
    }
    w.line("return vimotest::report();");
    w.close();
    w.finish()
}

fn statement(w: &mut Writer, s: &Statement, unit: &IrUnit, suite: &IrSuite) {
    match s {
        Statement::Comment(c) => {
            w.blank();
            w.line(format!("// {c}"));
        }
        Statement::Fixture => {
            w.line(format!("{} setup;", suite.setup_class));
            w.line("auto viewModel = setup.createViewModel();");
            if unit.controller.is_some() {
                w.line("auto controller = setup.createController(*viewModel);");
            }
        }
        Statement::DeclareLocal { name: n, ty: IrType::String, value: Expr::Str(text) } => {
            let pieces: Vec<String> = text.split_inclusive('\n').map(quote).collect();
            if pieces.len() <= 1 {
                let one = pieces.first().cloned().unwrap_or_else(|| quote(""));
                w.line(format!("const std::string {} = {one};", name(n)));
            } else {
                w.line(format!("const std::string {} =", name(n)));
                w.depth += 1;
                for (i, p) in pieces.iter().enumerate() {
                    w.line(format!("{p}{}", if i + 1 == pieces.len() { ";" } else { "" }));
                }
                w.depth -= 1;
            }
        }
        Statement::DeclareLocal { name: n, ty, value } => {
            let decl = match ty {
                IrType::RowList => "const auto&".to_string(),
                IrType::String => "const std::string".to_string(),
                other => format!("const {}", value_ty(other)),
            };
            w.line(format!("{decl} {} = {};", name(n), expr(value)));
        }
        Statement::CallSetup { context, payload } => match payload {
            Payload::Local(l) => w.line(format!("setup.provideContext({}, {});", quote(context), name(l))),
            Payload::File(p) => w.line(format!("setup.provideContextFile({}, {});", quote(context), quote(p))),
        },
        Statement::Invoke { receiver: r, method, args } => {
            let args: Vec<String> = args.iter().map(expr).collect();
            w.line(format!("{}->{method}({});", receiver(*r), args.join(", ")));
        }
        Statement::AssertEqual { expected, actual, message, guard } => {
            let call = format!("VT_ASSERT_EQ({}, {}, {})", expr(expected), expr(actual), quote(&message.join(" ")));
            if *guard {
                // Later cell accesses index by row, so a count mismatch ends the test.
                w.open(format!("if (!{call})"));
                w.line("return;");
                w.close();
            } else {
                w.line(format!("{call};"));
            }
        }
        Statement::ConstructRowMatrix { name: n, rows } => {
            if rows.is_empty() {
                w.line(format!("const std::vector<std::vector<const char*>> {n};"));
                return;
            }
            w.open(format!("const std::vector<std::vector<const char*>> {n} ="));
            for r in rows {
                let cells: Vec<String> = r.iter().map(|c| c.as_deref().map_or("nullptr".to_string(), quote)).collect();
                w.line(format!("{{{}}},", cells.join(", ")));
            }
            w.close_with("};");
        }
    }
}
