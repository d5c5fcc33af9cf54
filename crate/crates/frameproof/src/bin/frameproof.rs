use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(frameproof::cli::run() as u8)
}
