use std::process::ExitCode;

fn main() -> ExitCode {
    let out = motzeta_cli::run(std::env::args_os());
    if !out.stdout.is_empty() {
        println!("{}", out.stdout.trim_end());
    }
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr.trim_end());
    }
    ExitCode::from(out.code)
}
