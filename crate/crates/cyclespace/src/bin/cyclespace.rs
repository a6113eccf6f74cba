use clap::Parser;

fn main() {
    let cli = cyclespace::cli::Cli::parse();
    std::process::exit(cyclespace::cli::run(cli));
}
