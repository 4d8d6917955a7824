use clap::Parser;

use matchcert_cli::commands::{execute, Cli};
use matchcert_cli::EXIT_INVALID;

fn main() {
    // usage errors are invalid input (exit 1); --help/--version exit 0
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let mut stdout = std::io::stdout().lock();
    if let Err(failure) = execute(cli, &mut stdout) {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}
