use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let code = dhop::cli::run_cli(&args, &mut out, &mut err);
    ExitCode::from(code as u8)
}
