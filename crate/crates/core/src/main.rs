use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ratcont::cli::{run_command, Command};

fn main() -> ExitCode {
    let cmd = Command::parse();
    let outcome = run_command(&cmd);
    let rendered = outcome.render(cmd.json);
    let mut out = std::io::stdout().lock();
    if out.write_all(rendered.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.code as u8)
}
