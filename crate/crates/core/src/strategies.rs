//! Proptest strategies for syntactically valid trees of both DSLs.
//!
//! Generated trees print and re-parse; they are not necessarily
//! semantically valid. Spans are left at their defaults.

use std::collections::HashSet;
use std::path::PathBuf;

use proptest::collection::vec;
use proptest::option;
use proptest::prelude::*;

use crate::model::{
    Action, Arg, BindingSubject, CellExpectation, CellKind, Check, Color, ColumnSpec, CommandDecl, CommandKind,
    ContextBody, ContextDefinition, DataTable, ExampleValue, FeatureCheck, FeatureKind, Ident, Literal, NameBinding,
    Param, ParamType, RowExpectation, Span, TableCheck, TestScenario, TestSuite, ViewModelDescription, WidgetCheck,
    WidgetDecl, WidgetKind,
};

/// Words that open a line or a clause somewhere in either grammar.
const KEYWORDS: &[&str] = &[
    "as",
    "bind",
    "button",
    "check",
    "checkbox",
    "click",
    "color",
    "columns",
    "command",
    "commands",
    "datatable",
    "example",
    "false",
    "file",
    "fileName",
    "fillText",
    "for",
    "given",
    "ignore",
    "image",
    "label",
    "none",
    "on",
    "property",
    "rows",
    "scenario",
    "selectRow",
    "selectedRow",
    "supports",
    "table",
    "testsuite",
    "text",
    "textfield",
    "then",
    "tooltip",
    "true",
    "typeName",
    "use",
    "viewmodel",
    "when",
    "widgets",
    "xml",
];

pub fn ident() -> impl Strategy<Value = Ident> {
    "[A-Za-z][A-Za-z0-9_]{0,9}"
        .prop_filter("keyword", |s| !KEYWORDS.contains(&s.as_str()))
        .prop_map(|s| Ident::new(s).expect("pattern is an identifier"))
}

/// Any string a quoted literal can carry.
pub fn string_value() -> impl Strategy<Value = String> {
    "[ -~äöü€\\n\\t]{0,12}"
}

/// Trimmed, single-line cell text.
pub fn cell_value() -> impl Strategy<Value = String> {
    "[ -~äö€]{0,10}".prop_map(|s| s.trim().to_string())
}

fn literal() -> impl Strategy<Value = Literal> {
    prop_oneof![
        string_value().prop_map(Literal::Str),
        any::<bool>().prop_map(Literal::Bool),
        (-1_000_000_i64..1_000_000).prop_map(Literal::Int),
    ]
}

/// One value of each literal type, for positions whose type is fixed.
fn literal_pool() -> impl Strategy<Value = (String, bool, i64)> {
    (string_value(), any::<bool>(), -1000_i64..1000)
}

fn feature() -> impl Strategy<Value = FeatureKind> {
    prop::sample::select(FeatureKind::ALL.to_vec())
}

fn color() -> impl Strategy<Value = Color> {
    prop::sample::select(Color::ALL.to_vec())
}

fn widget() -> impl Strategy<Value = WidgetDecl> {
    let kind = prop::sample::select(WidgetKind::ALL.to_vec());
    (kind, ident(), vec(feature(), 0..3)).prop_flat_map(|(kind, name, supports)| {
        let columns = if kind == WidgetKind::Table {
            vec(
                (prop::sample::select(vec![CellKind::Label, CellKind::Image, CellKind::Checkbox]), string_value()),
                1..4,
            )
            .prop_map(|cs| {
                cs.into_iter()
                    .map(|(cell_kind, title)| ColumnSpec { cell_kind, title, span: Span::default() })
                    .collect()
            })
            .boxed()
        } else {
            Just(Vec::new()).boxed()
        };
        let examples = if kind == WidgetKind::Table {
            Just(Vec::new()).boxed()
        } else {
            vec((feature(), literal()), 0..3)
                .prop_map(|es| {
                    es.into_iter()
                        .map(|(feature, value)| ExampleValue { feature, value, span: Span::default() })
                        .collect()
                })
                .boxed()
        };
        (Just(kind), Just(name), Just(supports), columns, examples).prop_map(
            |(kind, name, supports, columns, examples)| WidgetDecl {
                name,
                kind,
                supports,
                columns,
                examples,
                span: Span::default(),
            },
        )
    })
}

fn command() -> impl Strategy<Value = CommandDecl> {
    let param_type = prop::sample::select(vec![ParamType::String, ParamType::Bool, ParamType::Int, ParamType::Context]);
    prop_oneof![
        (prop::sample::select(CommandKind::ALL.to_vec()), ident()).prop_map(|(kind, target)| CommandDecl::widget(
            kind,
            target,
            Span::default()
        )),
        (ident(), vec((ident(), param_type), 0..4)).prop_map(|(name, params)| {
            let params = params.into_iter().map(|(name, ty)| Param { name, ty, span: Span::default() }).collect();
            CommandDecl::custom(name, params, Span::default())
        }),
    ]
}

fn binding() -> impl Strategy<Value = NameBinding> {
    let subject = prop_oneof![
        Just(BindingSubject::TypeName),
        Just(BindingSubject::FileName),
        (ident(), feature()).prop_map(|(widget, feature)| BindingSubject::PropertyName { widget, feature }),
        (ident(), feature()).prop_map(|(widget, feature)| BindingSubject::GetterName { widget, feature }),
    ];
    (subject, ident(), "[A-Za-z0-9_.-]{1,8}").prop_map(|(subject, name, file)| {
        let bound = match subject {
            BindingSubject::FileName if file != "." && file != ".." => file,
            BindingSubject::FileName => "f".to_string(),
            _ => name.to_string(),
        };
        NameBinding { subject, bound, span: Span::default() }
    })
}

/// Keeps the first item for each key.
fn dedup_by_key<T, K: Eq + std::hash::Hash>(items: &mut Vec<T>, key: impl Fn(&T) -> K) {
    let mut seen = HashSet::new();
    items.retain(|item| seen.insert(key(item)));
}

pub fn view_model() -> impl Strategy<Value = ViewModelDescription> {
    (ident(), vec(binding(), 0..3), vec(widget(), 0..5), vec(command(), 0..5)).prop_map(
        |(name, mut bindings, mut widgets, mut commands)| {
            dedup_by_key(&mut bindings, |b| b.subject.clone());
            dedup_by_key(&mut widgets, |w| w.name.clone());
            dedup_by_key(&mut commands, |c| c.name.clone());
            ViewModelDescription {
                name,
                bindings,
                widgets,
                commands,
                source: PathBuf::from("generated.vmdsl"),
                span: Span::default(),
            }
        },
    )
}

fn data_table() -> impl Strategy<Value = DataTable> {
    (header(), 0usize..4).prop_flat_map(|(header, rows)| {
        let columns = header.len();
        vec(vec(cell_value(), columns), rows).prop_map(move |rows| DataTable { header: header.clone(), rows })
    })
}

/// One to three distinct titles.
fn header() -> impl Strategy<Value = Vec<String>> {
    vec(cell_value(), 1..4).prop_map(|mut titles| {
        dedup_by_key(&mut titles, |t| t.clone());
        titles
    })
}

/// Verbatim text without the closing delimiter.
fn verbatim() -> impl Strategy<Value = String> {
    "[ -!#-~\\n]{0,20}"
}

fn context() -> impl Strategy<Value = ContextDefinition> {
    let body_and_name = prop_oneof![
        (ident(), data_table()).prop_map(|(n, t)| (n, ContextBody::DataTable(t))),
        (ident(), verbatim()).prop_map(|(n, t)| (n, ContextBody::Text(t))),
        (ident(), verbatim()).prop_map(|(n, t)| (n, ContextBody::Xml(t))),
        (ident(), string_value()).prop_map(|(n, p)| (n, ContextBody::File(p))),
        (ident(), ident()).prop_map(|(n, t)| (n, ContextBody::Reference(t))),
        ident().prop_map(|n| (n.clone(), ContextBody::Reference(n))),
    ];
    body_and_name.prop_map(|(name, body)| ContextDefinition { name, body, span: Span::default() })
}

fn action() -> impl Strategy<Value = Action> {
    let arg = prop_oneof![literal().prop_map(Arg::Literal), ident().prop_map(Arg::Context)];
    prop_oneof![
        (ident(), vec(arg, 0..4)).prop_map(|(name, args)| Action::Custom { name, args, span: Span::default() }),
        (prop::sample::select(CommandKind::ALL.to_vec()), ident(), literal_pool()).prop_map(
            |(kind, target, (text, flag, n))| {
                let arg = match kind {
                    CommandKind::Click => None,
                    CommandKind::Check => Some(Literal::Bool(flag)),
                    CommandKind::FillText => Some(Literal::Str(text)),
                    CommandKind::SelectRow => Some(Literal::Int(n)),
                };
                Action::Widget { kind, target, arg, span: Span::default() }
            }
        ),
    ]
}

fn expectation_cell() -> impl Strategy<Value = CellExpectation> {
    prop_oneof![
        1 => Just(CellExpectation::ignored()),
        5 => (cell_value(), option::of(string_value()), option::of(color())).prop_map(|(value, tooltip, color)| {
            CellExpectation { ignored: false, value, tooltip, color }
        }),
    ]
}

fn table_check() -> impl Strategy<Value = TableCheck> {
    (ident(), vec(string_value(), 0..3), header(), 0usize..4).prop_flat_map(|(widget, ignored, header, rows)| {
        let columns = header.len();
        let row = (vec(expectation_cell(), columns), any::<bool>(), option::of(color()))
            .prop_map(|(cells, selected, color)| RowExpectation { cells, selected, color, span: Span::default() });
        let selected_row = option::of(option::of(0usize..10));
        (vec(row, rows), selected_row).prop_map(move |(rows, selected_row)| TableCheck {
            widget: widget.clone(),
            ignored_columns: ignored.clone(),
            header: header.clone(),
            rows,
            selected_row,
            span: Span::default(),
        })
    })
}

/// Features a one-line widget check can name.
fn checkable_feature() -> impl Strategy<Value = FeatureKind> {
    prop::sample::select(vec![FeatureKind::Enabled, FeatureKind::Visible, FeatureKind::Checked, FeatureKind::Text])
}

fn check() -> impl Strategy<Value = Check> {
    let widget_check = (
        prop::sample::select(WidgetKind::ALL.iter().copied().filter(|k| *k != WidgetKind::Table).collect::<Vec<_>>()),
        ident(),
        vec((checkable_feature(), string_value(), any::<bool>()), 1..3),
    )
        .prop_map(|(kind, widget, features)| {
            let features = features.into_iter().map(|(feature, text, flag)| {
                let expected = if feature == FeatureKind::Text { Literal::Str(text) } else { Literal::Bool(flag) };
                FeatureCheck { feature, expected, span: Span::default() }
            });
            Check::Widget(WidgetCheck { kind, widget, features: features.collect(), span: Span::default() })
        });
    prop_oneof![widget_check, table_check().prop_map(Check::Table)]
}

fn scenario() -> impl Strategy<Value = TestScenario> {
    (string_value(), vec(context(), 0..3), vec(action(), 0..4), vec(check(), 0..3)).prop_map(
        |(description, given, when, then)| TestScenario { description, given, when, then, span: Span::default() },
    )
}

pub fn test_suite() -> impl Strategy<Value = TestSuite> {
    (ident(), ident(), vec(scenario(), 0..3)).prop_map(|(name, target, mut scenarios)| {
        dedup_by_key(&mut scenarios, |s| s.description.clone());
        TestSuite { name, target, scenarios, source: PathBuf::from("generated.vmtest"), span: Span::default() }
    })
}
