use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(peakon_lab::run(std::env::args_os()))
}
