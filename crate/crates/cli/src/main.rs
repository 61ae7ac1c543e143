use std::io::{IsTerminal, Write};

use vimotest_cli::{color_from_env, run_cli, Console, Registry};

fn main() {
    let stdout = std::io::stdout();
    let color = color_from_env(stdout.is_terminal());
    let mut out = stdout.lock();
    let mut err = std::io::stderr().lock();
    let code = run_cli(std::env::args_os(), &Registry::builtin(), &mut Console { out: &mut out, err: &mut err, color });
    let _ = out.flush();
    std::process::exit(code);
}
