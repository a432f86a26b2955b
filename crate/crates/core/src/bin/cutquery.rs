use clap::Parser;
use cutquery::cli::{main_with, Cli};

fn main() {
    match main_with(Cli::parse()) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
