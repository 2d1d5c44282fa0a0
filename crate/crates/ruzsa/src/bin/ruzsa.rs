use clap::Parser;

fn main() {
    let cli = ruzsa::cli::Cli::parse();
    std::process::exit(ruzsa::cli::run(&cli));
}
