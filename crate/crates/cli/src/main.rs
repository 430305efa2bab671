use clap::Parser;

use cechmv_cli::args::Cli;
use cechmv_cli::runner::run;

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("cechmv: {err}");
        std::process::exit(1);
    }
}
