use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, report) = fgcouple_cli::run_command(std::env::args_os());
    let written = if code == fgcouple_cli::EXIT_USAGE {
        std::io::stderr().write_all(report.as_bytes())
    } else {
        std::io::stdout().write_all(report.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
