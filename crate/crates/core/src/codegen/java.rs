//! Java 17 sources with JUnit 5 tests.

use crate::config::{Delivery, GenConfig};

use super::ir::*;
use super::{safe_name, GeneratedFile, Writer};

const RESERVED: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
    "true",
    "false",
    "null",
    "var",
    "record",
    "yield",
    "sealed",
    "permits",
    "setup",
    "viewModel",
    "controller",
];

/// The test file's import block never varies.
const TEST_IMPORTS: &str = "import static org.junit.jupiter.api.Assertions.assertEquals;

import java.nio.file.Files;
import java.nio.file.Path;
import java.util.List;
import java.util.OptionalInt;
import org.junit.jupiter.api.Test;
";

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
            // Octal, because unicode escapes are processed before lexing.
            c if (c as u32) < 0x20 || c == '\u{7f}' => out.push_str(&format!("\\{:03o}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// `qualifier` prefixes nested types when used outside the view model.
fn ty(t: &IrType, vm: &str, qualified: bool) -> String {
    let q = |n: &str| if qualified { format!("{vm}.{n}") } else { n.to_string() };
    match t {
        IrType::Bool => "boolean".into(),
        IrType::String => "String".into(),
        IrType::Int => "long".into(),
        IrType::Index => "int".into(),
        IrType::RowList => format!("List<{}>", q("Row")),
        IrType::OptIndex => "OptionalInt".into(),
        IrType::Named(n) => n.clone(),
    }
}

fn package_line(w: &mut Writer, config: &GenConfig) {
    if let Some(p) = &config.java_package {
        w.line(format!("package {p};"));
        w.blank();
    }
}

fn path_for(config: &GenConfig, file: &str) -> String {
    match &config.java_package {
        Some(p) => format!("{}/{file}.java", p.replace('.', "/")),
        None => format!("{file}.java"),
    }
}

pub fn emit_java(unit: &IrUnit, config: &GenConfig) -> Vec<GeneratedFile> {
    let mut files = vec![GeneratedFile { path: path_for(config, &unit.file_name), contents: view_model(unit, config) }];
    if let Some(controller) = &unit.controller {
        files.push(GeneratedFile { path: path_for(config, controller), contents: controller_file(unit, config) });
    }
    for suite in unit.suites.iter().filter(|s| !s.tests.is_empty()) {
        let class = format!("{}Test", suite.name);
        files.push(GeneratedFile { path: path_for(config, &class), contents: test_file(unit, suite, config) });
        for f in &suite.context_files {
            files.push(GeneratedFile { path: f.path.clone(), contents: f.contents.clone() });
        }
    }
    files
}

fn class_head(c: &IrClass) -> String {
    let kind = if c.is_abstract { "public abstract class" } else { "public class" };
    format!("{kind} {}", c.name)
}

fn view_model(unit: &IrUnit, config: &GenConfig) -> String {
    let vm = unit.class(&unit.type_name).expect("unit has a view model");
    let mut w = Writer::new("    ");
    package_line(&mut w, config);
    let has_rows = unit.has_rows();
    let has_opt = vm.properties.iter().any(|p| p.ty == IrType::OptIndex);
    let mut imports = Vec::new();
    if has_rows {
        imports.extend(["java.util.ArrayList", "java.util.List"]);
    }
    if has_opt {
        imports.push("java.util.OptionalInt");
    }
    for i in &imports {
        w.line(format!("import {i};"));
    }
    w.blank();
    w.open(class_head(vm));
    if has_rows {
        cell_and_row(&mut w);
    }
    for p in unit.params_of(&vm.name) {
        params_class(&mut w, p);
    }
    w.blank();
    for p in &vm.properties {
        let init = p.initial.as_ref().map(|e| format!(" = {}", expr(e))).unwrap_or_default();
        w.line(format!("private {} {}{init};", ty(&p.ty, &vm.name, false), name(&p.name)));
    }
    for p in &vm.properties {
        let (t, field) = (ty(&p.ty, &vm.name, false), name(&p.name));
        w.blank();
        w.open(format!("public {t} {}()", p.getter));
        w.line(format!("return {field};"));
        w.close();
        if let Some(setter) = &p.setter {
            w.blank();
            w.open(format!("public void {setter}({t} value)"));
            w.line(format!("this.{field} = value;"));
            w.close();
        }
    }
    operations(&mut w, vm, &vm.name);
    w.close();
    w.finish()
}

fn cell_and_row(w: &mut Writer) {
    w.open("public static final class Cell");
    w.line("private final String text;");
    w.line("private final String tooltip;");
    w.line("private final String color;");
    w.blank();
    w.open("public Cell(String text)");
    w.line("this(text, null, \"none\");");
    w.close();
    w.blank();
    w.open("public Cell(String text, String tooltip, String color)");
    w.line("this.text = text;");
    w.line("this.tooltip = tooltip;");
    w.line("this.color = color;");
    w.close();
    for (t, f) in [("String", "Text"), ("String", "Tooltip"), ("String", "Color")] {
        w.blank();
        w.open(format!("public {t} get{f}()"));
        w.line(format!("return {};", f.to_lowercase()));
        w.close();
    }
    w.close();
    w.blank();
    w.open("public static final class Row");
    w.line("private final List<Cell> cells;");
    w.line("private final String color;");
    w.blank();
    w.open("public Row(List<Cell> cells)");
    w.line("this(cells, \"none\");");
    w.close();
    w.blank();
    w.open("public Row(List<Cell> cells, String color)");
    w.line("this.cells = cells;");
    w.line("this.color = color;");
    w.close();
    w.blank();
    w.open("public List<Cell> getCells()");
    w.line("return cells;");
    w.close();
    w.blank();
    w.open("public String getColor()");
    w.line("return color;");
    w.close();
    w.close();
    w.blank();
}

fn params_class(w: &mut Writer, p: &IrClass) {
    w.open(format!("public static final class {}", p.name));
    for f in &p.properties {
        w.line(format!("private final {} {};", ty(&f.ty, "", false), name(&f.name)));
    }
    w.blank();
    let args: Vec<String> =
        p.properties.iter().map(|f| format!("{} {}", ty(&f.ty, "", false), name(&f.name))).collect();
    w.open(format!("public {}({})", p.name, args.join(", ")));
    for f in &p.properties {
        w.line(format!("this.{0} = {0};", name(&f.name)));
    }
    w.close();
    for f in &p.properties {
        w.blank();
        w.open(format!("public {} {}()", ty(&f.ty, "", false), f.getter));
        w.line(format!("return {};", name(&f.name)));
        w.close();
    }
    w.close();
    w.blank();
}

fn operations(w: &mut Writer, class: &IrClass, vm: &str) {
    for op in &class.operations {
        w.blank();
        if let Some(doc) = &op.doc {
            w.line(format!("/** {doc} */"));
        }
        let params: Vec<String> =
            op.params.iter().map(|p| format!("{} {}", ty(&p.ty, vm, class.name != vm), name(&p.name))).collect();
        let sig = format!("{}({})", op.name, params.join(", "));
        if op.is_abstract {
            w.line(format!("public abstract void {sig};"));
        } else {
            w.open(format!("public void {sig}"));
            w.close();
        }
    }
}

fn controller_file(unit: &IrUnit, config: &GenConfig) -> String {
    let name_ = unit.controller.as_deref().expect("controller requested");
    let c = unit.class(name_).expect("controller class lowered");
    let vm = &unit.type_name;
    let mut w = Writer::new("    ");
    package_line(&mut w, config);
    w.open(class_head(c));
    for p in unit.params_of(name_) {
        params_class(&mut w, p);
    }
    w.line(format!("protected final {vm} viewModel;"));
    w.blank();
    w.open(format!("public {name_}({vm} viewModel)"));
    w.line("this.viewModel = viewModel;");
    w.close();
    operations(&mut w, c, vm);
    w.close();
    w.finish()
}

fn receiver(r: Receiver) -> &'static str {
    match r {
        Receiver::ViewModel => "viewModel",
        Receiver::Controller => "controller",
    }
}

fn expr(e: &Expr) -> String {
    let cells = |rows: &str, row: usize, column: usize| format!("{rows}.get({row}).getCells().get({column})");
    match e {
        Expr::Str(s) => quote(s),
        Expr::Bool(b) => b.to_string(),
        Expr::Int(i) => format!("{i}L"),
        Expr::Index(i) => i.to_string(),
        Expr::OptIndex(Some(i)) => format!("OptionalInt.of({i})"),
        Expr::OptIndex(None) => "OptionalInt.empty()".into(),
        Expr::EmptyRows => "new ArrayList<>()".into(),
        Expr::Local(n) => name(n),
        Expr::ReadFile(p) => format!("Files.readString(Path.of({}))", quote(p)),
        Expr::NewParams { owner, class, args } => {
            let args: Vec<String> = args.iter().map(expr).collect();
            format!("new {owner}.{class}({})", args.join(", "))
        }
        Expr::Get { receiver: r, getter } => format!("{}.{getter}()", receiver(*r)),
        Expr::MatrixRowCount { matrix } => format!("{matrix}.length"),
        Expr::MatrixCell { matrix, row, column } => format!("{matrix}[{row}][{column}]"),
        Expr::RowCount { rows } => format!("{}.size()", name(rows)),
        Expr::CellText { rows, row, column } => format!("{}.getText()", cells(&name(rows), *row, *column)),
        Expr::CellTooltip { rows, row, column } => format!("{}.getTooltip()", cells(&name(rows), *row, *column)),
        Expr::CellColor { rows, row, column } => format!("{}.getColor()", cells(&name(rows), *row, *column)),
        Expr::RowColor { rows, row } => format!("{}.get({row}).getColor()", name(rows)),
    }
}

fn reads_files(t: &IrTest) -> bool {
    t.statements.iter().any(|s| matches!(s, Statement::DeclareLocal { value: Expr::ReadFile(_), .. }))
}

fn test_file(unit: &IrUnit, suite: &IrSuite, config: &GenConfig) -> String {
    let mut w = Writer::new("    ");
    package_line(&mut w, config);
    for l in TEST_IMPORTS.lines() {
        w.line(l);
    }
    w.blank();
    w.open(format!("class {}Test", suite.name));
    for t in &suite.tests {
        w.blank();
        w.line("@Test");
        let throws = if reads_files(t) { " throws Exception" } else { "" };
        w.open(format!("void {}(){throws}", name(&t.name)));
        for s in &t.statements {
            statement(&mut w, s, unit, suite, config);
        }
        w.close();
    }
    w.close();
    w.finish()
}

fn statement(w: &mut Writer, s: &Statement, unit: &IrUnit, suite: &IrSuite, config: &GenConfig) {
    let vm = &unit.type_name;
    match s {
        Statement::Comment(c) => {
            w.blank();
            w.line(format!("// {c}"));
        }
        Statement::Fixture => {
            let setup = &suite.setup_class;
            w.line(format!("{setup} setup = new {setup}();"));
            w.line(format!("{vm} viewModel = setup.createViewModel();"));
            if let Some(c) = &unit.controller {
                w.line(format!("{c} controller = setup.createController(viewModel);"));
            }
        }
        Statement::DeclareLocal { name: n, ty: t, value: Expr::Str(text) } if *t == IrType::String => {
            let mut pieces: Vec<String> = text.split_inclusive('\n').map(quote).collect();
            if pieces.is_empty() {
                pieces.push(quote(""));
            }
            w.line(format!("String {} = {}{}", name(n), pieces[0], if pieces.len() == 1 { ";" } else { "" }));
            for (i, p) in pieces.iter().enumerate().skip(1) {
                let end = if i + 1 == pieces.len() { ";" } else { "" };
                w.line(format!("        + {p}{end}"));
            }
        }
        Statement::DeclareLocal { name: n, ty: t, value } => {
            w.line(format!("{} {} = {};", ty(t, vm, true), name(n), expr(value)));
        }
        Statement::CallSetup { context, payload } => match (payload, config.context_delivery) {
            (Payload::Local(l), _) => w.line(format!("setup.provideContext({}, {});", quote(context), name(l))),
            (Payload::File(p), Delivery::File | Delivery::Inline) => {
                w.line(format!("setup.provideContextFile({}, {});", quote(context), quote(p)))
            }
        },
        Statement::Invoke { receiver: r, method, args } => {
            let args: Vec<String> = args.iter().map(expr).collect();
            w.line(format!("{}.{method}({});", receiver(*r), args.join(", ")));
        }
        Statement::AssertEqual { expected, actual, message, .. } => {
            w.line(format!("assertEquals({}, {}, {});", expr(expected), expr(actual), quote(&message.join(" "))));
        }
        Statement::ConstructRowMatrix { name: n, rows } => {
            if rows.is_empty() {
                w.line(format!("String[][] {n} = {{}};"));
                return;
            }
            w.open(format!("String[][] {n} ="));
            for r in rows {
                let cells: Vec<String> = r.iter().map(|c| c.as_deref().map_or("null".to_string(), quote)).collect();
                w.line(format!("{{{}}},", cells.join(", ")));
            }
            w.close_with("};");
        }
    }
}
