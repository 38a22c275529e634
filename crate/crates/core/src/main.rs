use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    // internal assertion failures are reported through the exit code
    std::panic::set_hook(Box::new(|_| {}));
    let outcome = delta02_selector::cli::run(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
