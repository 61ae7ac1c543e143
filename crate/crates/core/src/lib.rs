//! Textual DSLs for ViewModel descriptions and given/when/then test
//! scenarios over logical widgets.
//!
//! The pipeline is: [`parser`] turns `.vmdsl` and `.vmtest` files into
//! syntax trees, [`analyzer`] links a suite against its description,
//! [`runtime`] executes linked scenarios against hand-written presentation
//! logic, and [`codegen`] lowers everything to a neutral IR from which Java
//! and C++ sources are emitted.

pub mod analyzer;
pub mod codegen;
pub mod config;
pub mod diagnostic;
pub mod model;
pub mod parser;
pub mod printer;
pub mod runtime;
#[cfg(any(test, feature = "strategies"))]
pub mod strategies;

pub use diagnostic::{Code, Diagnostic, Severity};

/// Chapters of the guide in `book/`, compiled as doc-tests.
#[cfg(doctest)]
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/describing.md")]
    pub mod describing {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    pub mod scenarios {}
    #[doc = include_str!("../../../book/src/contexts.md")]
    pub mod contexts {}
    #[doc = include_str!("../../../book/src/running.md")]
    pub mod running {}
    #[doc = include_str!("../../../book/src/generating.md")]
    pub mod generating {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
