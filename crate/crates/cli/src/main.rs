use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = toricmcm_cli::run(std::env::args_os());
    if outcome.exit_code == 1 && !outcome.output.trim_start().starts_with('{') {
        eprint!("{}", outcome.output);
    } else {
        print!("{}", outcome.output);
    }
    ExitCode::from(outcome.exit_code as u8)
}
