//! Generation and execution settings, read from `genconfig.json`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    #[default]
    Java,
    Cpp,
}

/// How data tables are turned into strings for the test setup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContextFormat {
    #[default]
    Multiline,
    Json,
    Xml,
}

/// How rendered context reaches the test setup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Delivery {
    #[default]
    Inline,
    File,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields, default)]
pub struct GenConfig {
    pub target: Target,
    pub commands_on_view_model: bool,
    pub generate_view_controller: bool,
    pub abstract_view_model: bool,
    pub parameter_object: bool,
    pub context_format: ContextFormat,
    pub context_delivery: Delivery,
    pub java_package: Option<String>,
    pub cpp_namespace: Option<String>,
}

impl Default for GenConfig {
    fn default() -> GenConfig {
        GenConfig {
            target: Target::Java,
            commands_on_view_model: true,
            generate_view_controller: false,
            abstract_view_model: true,
            parameter_object: false,
            context_format: ContextFormat::Multiline,
            context_delivery: Delivery::Inline,
            java_package: None,
            cpp_namespace: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid genconfig.json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("exactly one of commandsOnViewModel and generateViewController must be true")]
    CommandHome,
    #[error("javaPackage `{0}` is not a dotted identifier")]
    JavaPackage(String),
    #[error("cppNamespace `{0}` is not a `::`-separated identifier")]
    CppNamespace(String),
}

impl GenConfig {
    pub fn from_json(text: &str) -> Result<GenConfig, ConfigError> {
        let config: GenConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.commands_on_view_model == self.generate_view_controller {
            return Err(ConfigError::CommandHome);
        }
        let ident = |s: &str| crate::model::validate_identifier(s).is_ok();
        if let Some(pkg) = &self.java_package {
            if !pkg.split('.').all(ident) {
                return Err(ConfigError::JavaPackage(pkg.clone()));
            }
        }
        if let Some(ns) = &self.cpp_namespace {
            if !ns.split("::").all(ident) {
                return Err(ConfigError::CppNamespace(ns.clone()));
            }
        }
        Ok(())
    }

    pub fn with_target(mut self, target: Target) -> GenConfig {
        self.target = target;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_full_document() {
        assert_eq!(GenConfig::from_json("{}").unwrap(), GenConfig::default());
        let config = GenConfig::from_json(
            r#"{"target":"cpp","commandsOnViewModel":false,"generateViewController":true,
                "abstractViewModel":false,"parameterObject":true,"contextFormat":"xml",
                "contextDelivery":"file","javaPackage":null,"cppNamespace":"app::ui"}"#,
        )
        .unwrap();
        assert_eq!(config.target, Target::Cpp);
        assert!(config.generate_view_controller);
        assert_eq!(config.context_format, ContextFormat::Xml);
        assert_eq!(config.cpp_namespace.as_deref(), Some("app::ui"));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(GenConfig::from_json(r#"{"colour":"red"}"#), Err(ConfigError::Json(_))));
    }

    #[test]
    fn command_home_is_exclusive() {
        for (on_vm, controller) in [(true, true), (false, false)] {
            let json = format!(r#"{{"commandsOnViewModel":{on_vm},"generateViewController":{controller}}}"#);
            assert!(matches!(GenConfig::from_json(&json), Err(ConfigError::CommandHome)));
        }
    }
}
