//! Target names for generated code.

use std::collections::HashMap;

use serde::Serialize;

use crate::config::{GenConfig, Target};
use crate::diagnostic::{Code, Diagnostic};
use crate::model::{BindingSubject, CommandDecl, FeatureKind, Ident, Span, ValueType, ViewModelDescription};

/// Splits on `_`, lowercases the first letter of the first word and
/// uppercases the first letter of every other word.
pub fn camel_case(raw: &str) -> String {
    let mut out = String::new();
    for (i, word) in raw.split('_').filter(|w| !w.is_empty()).enumerate() {
        let mut chars = word.chars();
        if let Some(first) = chars.next() {
            if i == 0 {
                out.extend(first.to_lowercase());
            } else {
                out.extend(first.to_uppercase());
            }
            out.push_str(chars.as_str());
        }
    }
    out
}

pub fn pascal_case(raw: &str) -> String {
    let camel = camel_case(raw);
    let mut chars = camel.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// `TaskListViewModel` -> `task_list_view_model`; `HTTPServer` -> `http_server`.
pub fn snake_case(raw: &str) -> String {
    let chars: Vec<char> = raw.chars().collect();
    let mut out = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if c.is_uppercase() && i > 0 {
            let prev = chars[i - 1];
            let next_lower = chars.get(i + 1).is_some_and(|n| n.is_lowercase());
            if prev != '_' && (prev.is_lowercase() || prev.is_ascii_digit() || (prev.is_uppercase() && next_lower)) {
                out.push('_');
            }
        }
        out.extend(c.to_lowercase());
    }
    out
}

/// `"Load Tasks and Add New"` -> `loadTasksAndAddNew`.
pub fn test_name(description: &str) -> String {
    let mut out = String::new();
    for (i, word) in description.split(|c: char| !c.is_ascii_alphanumeric()).filter(|w| !w.is_empty()).enumerate() {
        let mut chars = word.chars();
        let first = chars.next().expect("non-empty word");
        if i == 0 {
            out.push(first.to_ascii_lowercase());
        } else {
            out.push(first.to_ascii_uppercase());
        }
        out.push_str(chars.as_str());
    }
    if !out.starts_with(|c: char| c.is_ascii_alphabetic()) {
        out.insert_str(0, "scenario");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyNames {
    pub widget: Ident,
    pub feature: FeatureKind,
    pub property: String,
    pub getter: String,
    pub setter: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommandNames {
    pub command: Ident,
    pub method: String,
    pub param_object: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NameMap {
    pub type_name: String,
    pub file_name: String,
    pub controller_name: String,
    pub properties: Vec<PropertyNames>,
    pub commands: Vec<CommandNames>,
}

impl NameMap {
    pub fn property(&self, widget: &str, feature: FeatureKind) -> Option<&PropertyNames> {
        self.properties.iter().find(|p| p.widget == widget && p.feature == feature)
    }

    pub fn command(&self, command: &str) -> Option<&CommandNames> {
        self.commands.iter().find(|c| c.command == command)
    }
}

fn default_getter(property: &str, feature: FeatureKind) -> String {
    match feature.value_type() {
        ValueType::Bool => format!("is{}", pascal_case(property)),
        _ => format!("get{}", pascal_case(property)),
    }
}

fn command_names(cmd: &CommandDecl) -> CommandNames {
    CommandNames {
        command: cmd.name.clone(),
        method: format!("on{}", pascal_case(cmd.name.as_str())),
        param_object: format!("{}Params", pascal_case(cmd.name.as_str())),
    }
}

/// Computes target names, applying bindings subject by subject.
///
/// The default file name follows the target: Java requires the file to be
/// named after its public class, C++ uses `snake_case`.
pub fn compute_name_map(desc: &ViewModelDescription, config: &GenConfig) -> Result<NameMap, Vec<Diagnostic>> {
    let bound = |subject: BindingSubject| desc.binding(&subject).map(|b| (b.bound.clone(), b.span));

    let type_name = bound(BindingSubject::TypeName).map_or_else(|| desc.name.to_string(), |b| b.0);
    let file_name = bound(BindingSubject::FileName).map_or_else(
        || match config.target {
            Target::Java => type_name.clone(),
            Target::Cpp => snake_case(&type_name),
        },
        |b| b.0,
    );

    // (name, span of the declaration or binding that produced it)
    let mut produced: Vec<(String, Span, &'static str)> = Vec::new();
    let mut properties = Vec::new();
    for w in &desc.widgets {
        for feature in w.features() {
            let default_property = format!("{}{}", camel_case(w.name.as_str()), feature.pascal());
            let getter_default = default_getter(&default_property, feature);
            let setter = format!("set{}", pascal_case(&default_property));
            let (property, pspan) = bound(BindingSubject::PropertyName { widget: w.name.clone(), feature })
                .unwrap_or((default_property, w.span));
            let (getter, gspan) = bound(BindingSubject::GetterName { widget: w.name.clone(), feature })
                .unwrap_or((getter_default, w.span));
            produced.push((property.clone(), pspan, "property"));
            produced.push((getter.clone(), gspan, "operation"));
            produced.push((setter.clone(), w.span, "operation"));
            properties.push(PropertyNames { widget: w.name.clone(), feature, property, getter, setter });
        }
    }
    let commands: Vec<CommandNames> = desc.commands.iter().map(command_names).collect();
    for (c, decl) in commands.iter().zip(&desc.commands) {
        produced.push((c.method.clone(), decl.span, "operation"));
    }

    let mut diags = Vec::new();
    let mut seen: HashMap<(&str, &str), Span> = HashMap::new();
    for (name, span, space) in &produced {
        if let Some(first) = seen.insert((space, name.as_str()), *span) {
            diags.push(Diagnostic::error(
                Code::E106,
                &desc.source,
                *span,
                format!("generated {space} name `{name}` collides with line {}", first.line),
            ));
        }
    }
    if !diags.is_empty() {
        diags.dedup_by(|a, b| a.span.offset == b.span.offset);
        return Err(diags);
    }
    Ok(NameMap { controller_name: format!("{type_name}Controller"), type_name, file_name, properties, commands })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_conversions() {
        assert_eq!(camel_case("AddNewTask"), "addNewTask");
        assert_eq!(camel_case("a_b"), "aB");
        assert_eq!(camel_case("aB"), "aB");
        assert_eq!(pascal_case("tasks"), "Tasks");
        assert_eq!(snake_case("TaskListViewModel"), "task_list_view_model");
        assert_eq!(snake_case("TaskListTests"), "task_list_tests");
        assert_eq!(snake_case("HTTPServer"), "http_server");
        assert_eq!(snake_case("page2View"), "page2_view");
        assert_eq!(snake_case("already_snake"), "already_snake");
    }

    #[test]
    fn scenario_test_names() {
        assert_eq!(test_name("Load Tasks and Add New"), "loadTasksAndAddNew");
        assert_eq!(test_name("delete -- the last one!"), "deleteTheLastOne");
        assert_eq!(test_name("2 rows"), "scenario2Rows");
        assert_eq!(test_name("¿?"), "scenario");
    }
}
