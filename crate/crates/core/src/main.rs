use std::process::ExitCode;

fn main() -> ExitCode {
    modsub::cli::run()
}
