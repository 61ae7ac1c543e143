use crate::analyzer::{
    pascal_case, CheckValue, Expectation, LinkedAction, LinkedArg, LinkedScenario, LinkedSuite, NameMap, ResolvedBody,
    ResolvedContext, RowsExpectation,
};
use crate::config::{Delivery, GenConfig};
use crate::model::{
    CommandDecl, CommandForm, CommandKind, FeatureKind, Literal, ParamType, ValueType, ViewModelDescription,
};
use crate::runtime::render_table;

use super::ir::*;

fn value_type(ty: ValueType) -> IrType {
    match ty {
        ValueType::Bool => IrType::Bool,
        ValueType::String => IrType::String,
        ValueType::Rows => IrType::RowList,
        ValueType::OptionalIndex => IrType::OptIndex,
    }
}

fn param_type(ty: ParamType) -> IrType {
    match ty {
        ParamType::String | ParamType::Context => IrType::String,
        ParamType::Bool => IrType::Bool,
        ParamType::Int => IrType::Int,
    }
}

fn initial(feature: FeatureKind, example: Option<&Literal>) -> Expr {
    match (feature.value_type(), example) {
        (ValueType::Bool, Some(Literal::Bool(b))) => Expr::Bool(*b),
        (ValueType::Bool, _) => Expr::Bool(feature != FeatureKind::Checked),
        (ValueType::String, Some(Literal::Str(s))) => Expr::Str(s.clone()),
        (ValueType::String, _) => Expr::Str(String::new()),
        (ValueType::Rows, _) => Expr::EmptyRows,
        (ValueType::OptionalIndex, _) => Expr::OptIndex(None),
    }
}

fn getter_for(name: &str, ty: &IrType) -> String {
    match ty {
        IrType::Bool => format!("is{}", pascal_case(name)),
        _ => format!("get{}", pascal_case(name)),
    }
}

fn operation_params(cmd: &CommandDecl) -> Vec<IrParam> {
    match &cmd.form {
        CommandForm::Widget { kind, .. } => kind
            .parameter()
            .map(|(name, ty)| IrParam {
                name: name.to_string(),
                ty: if *kind == CommandKind::SelectRow { IrType::Index } else { param_type(ty) },
            })
            .into_iter()
            .collect(),
        CommandForm::Custom { params } => {
            params.iter().map(|p| IrParam { name: p.name.to_string(), ty: param_type(p.ty) }).collect()
        }
    }
}

/// Whether `cmd` takes its arguments through a parameter object.
fn uses_params(cmd: &CommandDecl, config: &GenConfig) -> bool {
    config.parameter_object && cmd.is_custom() && !cmd.parameters().is_empty()
}

fn operation_doc(cmd: &CommandDecl, desc: &ViewModelDescription, names: &NameMap) -> Option<String> {
    let CommandForm::Widget { kind, target } = &cmd.form else { return None };
    let feature = kind.intrinsic_feature()?;
    let widget = desc.widget(target.as_str())?;
    let setter = &names.property(widget.name.as_str(), feature)?.setter;
    Some(format!("Called after the test has applied {setter}."))
}

/// Lowers a description and any number of suites linked against it.
pub fn lower_to_ir(
    desc: &ViewModelDescription,
    suites: &[&LinkedSuite],
    names: &NameMap,
    config: &GenConfig,
) -> IrUnit {
    let properties = desc
        .widgets
        .iter()
        .flat_map(|w| {
            w.features().into_iter().map(move |f| {
                let n = names.property(w.name.as_str(), f).expect("name map covers every feature");
                IrProperty {
                    name: n.property.clone(),
                    ty: value_type(f.value_type()),
                    getter: n.getter.clone(),
                    setter: Some(n.setter.clone()),
                    initial: Some(initial(f, w.example(f))),
                }
            })
        })
        .collect();

    let home = if config.generate_view_controller { names.controller_name.clone() } else { names.type_name.clone() };
    let mut params_classes = Vec::new();
    let operations = desc
        .commands
        .iter()
        .map(|cmd| {
            let n = names.command(cmd.name.as_str()).expect("name map covers every command");
            let mut params = operation_params(cmd);
            if uses_params(cmd, config) {
                params_classes.push(IrClass {
                    name: n.param_object.clone(),
                    role: ClassRole::Params { owner: home.clone() },
                    is_abstract: false,
                    properties: params
                        .iter()
                        .map(|p| IrProperty {
                            name: p.name.clone(),
                            getter: getter_for(&p.name, &p.ty),
                            ty: p.ty.clone(),
                            setter: None,
                            initial: None,
                        })
                        .collect(),
                    operations: Vec::new(),
                });
                params = vec![IrParam { name: "params".into(), ty: IrType::Named(n.param_object.clone()) }];
            }
            IrOperation {
                name: n.method.clone(),
                params,
                is_abstract: config.abstract_view_model,
                doc: operation_doc(cmd, desc, names),
            }
        })
        .collect::<Vec<_>>();

    let mut classes = Vec::new();
    let (vm_ops, controller) = if config.generate_view_controller {
        (Vec::new(), Some((names.controller_name.clone(), operations)))
    } else {
        (operations, None)
    };
    classes.push(IrClass {
        name: names.type_name.clone(),
        role: ClassRole::ViewModel,
        is_abstract: config.abstract_view_model,
        properties,
        operations: vm_ops,
    });
    let controller_name = controller.as_ref().map(|(n, _)| n.clone());
    if let Some((name, operations)) = controller {
        classes.push(IrClass {
            name,
            role: ClassRole::Controller,
            is_abstract: config.abstract_view_model,
            properties: Vec::new(),
            operations,
        });
    }
    classes.extend(params_classes);

    let suites = suites.iter().map(|s| lower_suite(s, desc, names, config, &home)).collect();
    IrUnit {
        type_name: names.type_name.clone(),
        file_name: names.file_name.clone(),
        controller: controller_name,
        classes,
        suites,
    }
}

fn lower_suite(
    suite: &LinkedSuite,
    desc: &ViewModelDescription,
    names: &NameMap,
    config: &GenConfig,
    home: &str,
) -> IrSuite {
    let mut context_files = Vec::new();
    let tests = suite
        .scenarios
        .iter()
        .map(|s| {
            let mut t = TestLowering { desc, names, config, home, out: Vec::new(), files: &mut context_files };
            t.scenario(s);
            IrTest { name: s.test_name.clone(), description: s.description.clone(), statements: t.out }
        })
        .collect();
    IrSuite {
        name: suite.name().to_string(),
        setup_class: format!("{}Setup", pascal_case(suite.name())),
        tests,
        context_files,
    }
}

struct TestLowering<'a> {
    desc: &'a ViewModelDescription,
    names: &'a NameMap,
    config: &'a GenConfig,
    home: &'a str,
    out: Vec<Statement>,
    files: &'a mut Vec<ContextFile>,
}

fn context_local(name: &str) -> String {
    format!("{name}Context")
}

impl TestLowering<'_> {
    fn receiver(&self) -> Receiver {
        if self.config.generate_view_controller {
            Receiver::Controller
        } else {
            Receiver::ViewModel
        }
    }

    fn payload_expr(&self, ctx: &ResolvedContext) -> Expr {
        match &ctx.body {
            ResolvedBody::DataTable(t) => Expr::Str(render_table(t, self.config.context_format)),
            ResolvedBody::Text(s) | ResolvedBody::Xml(s) => Expr::Str(s.clone()),
            ResolvedBody::File(p) => Expr::ReadFile(p.clone()),
        }
    }

    fn scenario(&mut self, s: &LinkedScenario) {
        self.out.push(Statement::Fixture);
        // Contexts passed as command arguments need a local even in file mode.
        let mut argument_contexts: Vec<&ResolvedContext> = Vec::new();
        for a in &s.actions {
            if let LinkedAction::Custom { args, .. } = a {
                for arg in args {
                    if let LinkedArg::Context(c) = arg {
                        if !argument_contexts.iter().any(|x| x.name == c.name) {
                            argument_contexts.push(c);
                        }
                    }
                }
            }
        }
        let inline = self.config.context_delivery == Delivery::Inline;
        let mut declared: Vec<String> = Vec::new();
        let mut given = Vec::new();
        for ctx in &s.contexts {
            let needs_local = inline || argument_contexts.iter().any(|c| c.name == ctx.name);
            if needs_local {
                given.push(Statement::DeclareLocal {
                    name: context_local(ctx.name.as_str()),
                    ty: IrType::String,
                    value: self.payload_expr(ctx),
                });
                declared.push(ctx.name.to_string());
            }
            let payload = match (&ctx.body, inline) {
                (_, true) => Payload::Local(context_local(ctx.name.as_str())),
                (ResolvedBody::File(p), false) => Payload::File(p.clone()),
                (_, false) => {
                    let path = format!("contexts/{}_{}.txt", s.test_name, ctx.name);
                    let Expr::Str(contents) = self.payload_expr(ctx) else { unreachable!("non-file bodies render") };
                    self.files.push(ContextFile { path: path.clone(), contents });
                    Payload::File(path)
                }
            };
            given.push(Statement::CallSetup { context: ctx.name.to_string(), payload });
        }
        for c in argument_contexts {
            if !declared.iter().any(|d| d == c.name.as_str()) {
                given.push(Statement::DeclareLocal {
                    name: context_local(c.name.as_str()),
                    ty: IrType::String,
                    value: self.payload_expr(c),
                });
            }
        }
        if !given.is_empty() {
            self.out.push(Statement::Comment("given".into()));
            self.out.extend(given);
        }
        if !s.actions.is_empty() {
            self.out.push(Statement::Comment("when".into()));
            for a in &s.actions {
                self.action(a);
            }
        }
        if !s.checks.is_empty() {
            self.out.push(Statement::Comment("then".into()));
            for c in &s.checks {
                self.check(c);
            }
        }
    }

    fn action(&mut self, a: &LinkedAction) {
        let cmd_names = self.names.command(a.command().as_str()).expect("linked command is named");
        let method = cmd_names.method.clone();
        match a {
            LinkedAction::Widget { kind, target, arg, .. } => {
                if let (Some(feature), Some(lit)) = (kind.intrinsic_feature(), arg) {
                    let setter =
                        self.names.property(target.as_str(), feature).expect("feature is named").setter.clone();
                    let value = match lit {
                        Literal::Int(i) => Expr::OptIndex(Some(*i as usize)),
                        other => literal(other),
                    };
                    self.out.push(Statement::Invoke {
                        receiver: Receiver::ViewModel,
                        method: setter,
                        args: vec![value],
                    });
                }
                let args = arg
                    .iter()
                    .map(|l| match l {
                        Literal::Int(i) if *kind == CommandKind::SelectRow => Expr::Index(*i as usize),
                        other => literal(other),
                    })
                    .collect();
                self.out.push(Statement::Invoke { receiver: self.receiver(), method, args });
            }
            LinkedAction::Custom { command, args } => {
                let mut exprs: Vec<Expr> = args
                    .iter()
                    .map(|arg| match arg {
                        LinkedArg::Literal(l) => literal(l),
                        LinkedArg::Context(c) => Expr::Local(context_local(c.name.as_str())),
                    })
                    .collect();
                let decl = self.desc.command(command.as_str()).expect("linked command exists");
                if uses_params(decl, self.config) {
                    exprs = vec![Expr::NewParams {
                        owner: self.home.to_string(),
                        class: cmd_names.param_object.clone(),
                        args: exprs,
                    }];
                }
                self.out.push(Statement::Invoke { receiver: self.receiver(), method, args: exprs });
            }
        }
    }

    fn getter(&self, widget: &str, feature: FeatureKind) -> Expr {
        let getter = self.names.property(widget, feature).expect("checked feature is named").getter.clone();
        Expr::Get { receiver: Receiver::ViewModel, getter }
    }

    fn assert(&mut self, expected: Expr, actual: Expr, message: Vec<String>) {
        self.out.push(Statement::AssertEqual { expected, actual, message, guard: false });
    }

    fn check(&mut self, c: &CheckValue) {
        let widget = c.widget.as_str();
        let label = vec![widget.to_string(), c.feature.keyword().to_string()];
        match &c.expectation {
            Expectation::Bool(b) => self.assert(Expr::Bool(*b), self.getter(widget, c.feature), label),
            Expectation::Text(t) => self.assert(Expr::Str(t.clone()), self.getter(widget, c.feature), label),
            Expectation::SelectedRow(s) => self.assert(Expr::OptIndex(*s), self.getter(widget, c.feature), label),
            Expectation::Rows(rows) => self.rows(widget, rows),
        }
    }

    fn rows(&mut self, widget: &str, e: &RowsExpectation) {
        let matrix = format!("expected{}", pascal_case(widget));
        let rows_local = self.names.property(widget, FeatureKind::Rows).expect("rows are named").property.clone();
        self.out.push(Statement::ConstructRowMatrix {
            name: matrix.clone(),
            rows: e
                .rows
                .iter()
                .map(|r| r.cells.iter().map(|c| (!c.ignored).then(|| c.value.clone())).collect())
                .collect(),
        });
        self.out.push(Statement::DeclareLocal {
            name: rows_local.clone(),
            ty: IrType::RowList,
            value: self.getter(widget, FeatureKind::Rows),
        });
        self.out.push(Statement::AssertEqual {
            expected: Expr::MatrixRowCount { matrix: matrix.clone() },
            actual: Expr::RowCount { rows: rows_local.clone() },
            message: vec![widget.to_string(), "row count".into()],
            guard: true,
        });
        let at = |i: usize| vec![widget.to_string(), "row".into(), i.to_string()];
        for (i, row) in e.rows.iter().enumerate() {
            for (pos, (col, cell)) in e.columns.iter().zip(&row.cells).enumerate() {
                if cell.ignored {
                    continue;
                }
                let mut msg = at(i);
                msg.push(col.title.clone());
                let (rows, column) = (rows_local.clone(), col.index);
                self.assert(
                    Expr::MatrixCell { matrix: matrix.clone(), row: i, column: pos },
                    Expr::CellText { rows: rows.clone(), row: i, column },
                    msg.clone(),
                );
                if let Some(tip) = &cell.tooltip {
                    let mut m = msg.clone();
                    m.push("tooltip".into());
                    self.assert(Expr::Str(tip.clone()), Expr::CellTooltip { rows: rows.clone(), row: i, column }, m);
                }
                if let Some(color) = cell.color {
                    let mut m = msg;
                    m.push("color".into());
                    self.assert(Expr::Str(color.name().into()), Expr::CellColor { rows, row: i, column }, m);
                }
            }
            if let Some(color) = row.color {
                let mut m = at(i);
                m.push("color".into());
                self.assert(Expr::Str(color.name().into()), Expr::RowColor { rows: rows_local.clone(), row: i }, m);
            }
        }
        if let Some(k) = e.rows.iter().position(|r| r.selected) {
            self.assert(
                Expr::OptIndex(Some(k)),
                self.getter(widget, FeatureKind::SelectedRow),
                vec![widget.to_string(), "selectedRow".into()],
            );
        }
    }
}

fn literal(l: &Literal) -> Expr {
    match l {
        Literal::Str(s) => Expr::Str(s.clone()),
        Literal::Bool(b) => Expr::Bool(*b),
        Literal::Int(i) => Expr::Int(*i),
    }
}
