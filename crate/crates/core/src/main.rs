use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = re_baxter::cli::dispatch(std::env::args_os());
    // a closed pipe downstream is not an error of ours
    if !out.stdout.is_empty() {
        let _ = writeln!(std::io::stdout(), "{}", out.stdout);
    }
    if !out.stderr.is_empty() {
        let _ = writeln!(std::io::stderr(), "{}", out.stderr);
    }
    ExitCode::from(out.code as u8)
}
