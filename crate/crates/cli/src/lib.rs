//! The `vimotest` command line: `check`, `run` and `gen`.
//!
//! Exit codes are 0 for success, 1 when a scenario failed or errored, 2 for
//! diagnostics in the sources and 3 for usage or configuration errors.
//! Diagnostics and usage errors go to standard error; reports and written
//! paths go to standard output.

pub mod registry;
pub mod report;
mod sources;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use vimotest::codegen::{generate, GeneratedFile};
use vimotest::config::GenConfig;
use vimotest::runtime::{run_suite, RunMode, ScenarioResult, Status};

pub use registry::Registry;
pub use report::{RunReport, SuiteReport, Totals};
use sources::{load, LoadError, Workspace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_DIAGNOSTICS: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "vimotest", version, about = "Check, run and generate ViewModel test suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and link sources, reporting diagnostics.
    Check {
        /// `.vmdsl` and `.vmtest` files or directories containing them.
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Run suites against compiled-in presentation logic.
    Run {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Only the suite with this name.
        #[arg(long)]
        suite: Option<String>,
        /// Registry id of the logic and setup to run against.
        #[arg(long)]
        setup: String,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        /// A `genconfig.json` whose context settings apply to the run.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Run scenarios on this many threads.
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        parallel: Option<u16>,
    },
    /// Generate Java or C++ sources.
    Gen {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overwrite existing files.
        #[arg(long)]
        force: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

/// Where output goes, and whether it may contain ANSI color.
pub struct Console<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
    pub color: bool,
}

impl Console<'_> {
    fn error(&mut self, message: impl std::fmt::Display) {
        let _ = writeln!(self.err, "error: {message}");
    }

    fn paint(&self, text: &str, ansi: &str) -> String {
        if self.color {
            format!("\x1b[{ansi}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}

/// Whether to color output, from `VIMOTEST_COLOR` and whether standard
/// output is a terminal. `0` disables and `1` forces color.
pub fn color_from_env(is_terminal: bool) -> bool {
    match std::env::var("VIMOTEST_COLOR").as_deref() {
        Ok("0") => false,
        Ok("1") => true,
        _ => is_terminal,
    }
}

/// Runs one invocation and returns its exit code. `args` includes the
/// program name.
pub fn run_cli<I, T>(args: I, registry: &Registry, console: &mut Console<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let info = matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if info {
                let _ = write!(console.out, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(console.err, "{rendered}");
            return EXIT_USAGE;
        }
    };
    match cli.command {
        Command::Check { paths } => check(&paths, console),
        Command::Run { paths, suite, setup, format, config, parallel } => {
            let mode = parallel.map_or(RunMode::Sequential, |n| RunMode::Parallel(n.into()));
            run(&paths, suite.as_deref(), &setup, format, config.as_deref(), mode, registry, console)
        }
        Command::Gen { paths, config, out, force } => gen(&paths, &config, &out, force, console),
    }
}

/// Loads sources, printing diagnostics or the usage error on failure.
fn load_or_report(paths: &[PathBuf], console: &mut Console<'_>) -> Result<Workspace, i32> {
    match load(paths) {
        Ok(ws) => Ok(ws),
        Err(LoadError::Usage(message)) => {
            console.error(message);
            Err(EXIT_USAGE)
        }
        Err(LoadError::Diagnostics(diags)) => {
            for d in &diags {
                let _ = writeln!(console.err, "{d}");
            }
            Err(EXIT_DIAGNOSTICS)
        }
    }
}

fn read_config(path: &Path, console: &mut Console<'_>) -> Result<GenConfig, i32> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        console.error(format!("cannot read {}: {e}", path.display()));
        EXIT_USAGE
    })?;
    GenConfig::from_json(&text).map_err(|e| {
        console.error(format!("{}: {e}", path.display()));
        EXIT_USAGE
    })
}

fn check(paths: &[PathBuf], console: &mut Console<'_>) -> i32 {
    match load_or_report(paths, console) {
        Ok(_) => EXIT_OK,
        Err(code) => code,
    }
}

#[allow(clippy::too_many_arguments)]
fn run(
    paths: &[PathBuf],
    suite_name: Option<&str>,
    setup_id: &str,
    format: Format,
    config_path: Option<&Path>,
    mode: RunMode,
    registry: &Registry,
    console: &mut Console<'_>,
) -> i32 {
    let Some(entry) = registry.get(setup_id) else {
        let known: Vec<&str> = registry.ids().collect();
        console.error(format!("unknown setup `{setup_id}`; registered: {}", known.join(", ")));
        return EXIT_USAGE;
    };
    let config = match config_path {
        Some(p) => match read_config(p, console) {
            Ok(c) => c,
            Err(code) => return code,
        },
        None => GenConfig::default(),
    };
    let ws = match load_or_report(paths, console) {
        Ok(ws) => ws,
        Err(code) => return code,
    };
    let selected: Vec<_> = ws.suites().filter(|s| suite_name.is_none_or(|n| s.name() == n)).collect();
    if let (Some(name), true) = (suite_name, selected.is_empty()) {
        console.error(format!("no suite named `{name}`"));
        return EXIT_USAGE;
    }
    let suites = selected
        .iter()
        .map(|s| SuiteReport {
            name: s.name().to_string(),
            scenarios: run_suite(s, entry.logic.as_ref(), entry.setup.as_ref(), &config, mode),
        })
        .collect();
    let report = RunReport::new(suites);
    match format {
        Format::Json => {
            let _ = writeln!(console.out, "{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
        }
        Format::Human => print_human(&report, console),
    }
    if report.totals.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn print_human(report: &RunReport, console: &mut Console<'_>) {
    for suite in &report.suites {
        for s in &suite.scenarios {
            let line = scenario_line(s, console);
            let _ = writeln!(console.out, "{line}");
            for f in &s.failures {
                let _ = writeln!(console.out, "    {f}");
            }
            if let Some(e) = &s.error {
                let _ = writeln!(console.out, "    {e}");
            }
        }
    }
    let t = report.totals;
    let _ = writeln!(console.out, "{} passed, {} failed, {} errored", t.passed, t.failed, t.errored);
}

fn scenario_line(s: &ScenarioResult, console: &Console<'_>) -> String {
    let tag = match s.status {
        Status::Passed => console.paint("PASS", "32"),
        Status::Failed => console.paint("FAIL", "31"),
        Status::Error => console.paint("ERROR", "31;1"),
    };
    format!("{tag} {}", s.description)
}

fn gen(paths: &[PathBuf], config_path: &Path, out: &Path, force: bool, console: &mut Console<'_>) -> i32 {
    let config = match read_config(config_path, console) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let ws = match load_or_report(paths, console) {
        Ok(ws) => ws,
        Err(code) => return code,
    };
    let mut files: Vec<GeneratedFile> = Vec::new();
    for unit in &ws.units {
        let suites: Vec<_> = unit.suites.iter().collect();
        let generated = match generate(&unit.description, &suites, &config) {
            Ok(g) => g,
            Err(diags) => {
                for d in &diags {
                    let _ = writeln!(console.err, "{d}");
                }
                return EXIT_DIAGNOSTICS;
            }
        };
        for file in generated {
            match files.iter().find(|f| f.path == file.path) {
                Some(existing) if existing.contents == file.contents => {}
                Some(_) => {
                    console.error(format!("two viewmodels both generate {}", file.path));
                    return EXIT_USAGE;
                }
                None => files.push(file),
            }
        }
    }
    if !force {
        let existing: Vec<String> =
            files.iter().map(|f| out.join(&f.path)).filter(|p| p.exists()).map(|p| p.display().to_string()).collect();
        if !existing.is_empty() {
            console.error(format!("refusing to overwrite {} without --force", existing.join(", ")));
            return EXIT_USAGE;
        }
    }
    for file in &files {
        let target = out.join(&file.path);
        let written = target
            .parent()
            .map_or(Ok(()), std::fs::create_dir_all)
            .and_then(|()| std::fs::write(&target, &file.contents));
        if let Err(e) = written {
            console.error(format!("cannot write {}: {e}", target.display()));
            return EXIT_USAGE;
        }
        let _ = writeln!(console.out, "{}", target.display());
    }
    EXIT_OK
}
