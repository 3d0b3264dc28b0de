use std::io;
use std::process::ExitCode;

use schulte::cli::{run, EXACT_LIMIT_ENV};

fn main() -> ExitCode {
    let env = std::env::var(EXACT_LIMIT_ENV).ok();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = run(std::env::args_os(), env.as_deref(), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code as u8)
}
