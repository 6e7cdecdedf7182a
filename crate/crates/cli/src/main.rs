use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = jordan_hall_cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}
