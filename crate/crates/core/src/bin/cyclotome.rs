use clap::Parser;

fn main() {
    let cli = cyclotome::cli::Cli::parse();
    std::process::exit(cyclotome::cli::run(cli));
}
