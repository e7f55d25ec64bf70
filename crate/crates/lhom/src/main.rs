use clap::error::ErrorKind;
use clap::Parser;

use lhom::Cli;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => lhom::EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = lhom::run(
        cli,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
