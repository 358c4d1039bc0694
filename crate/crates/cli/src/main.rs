use std::io::Write;

use clap::Parser;

fn main() {
    let out = bisurf_cli::run(bisurf_cli::Cli::parse());
    print!("{}", out.stdout);
    std::io::stdout().flush().ok();
    if !out.stderr.is_empty() {
        eprintln!("bisurf: {}", out.stderr);
    }
    std::process::exit(out.code);
}
