use clap::Parser;

fn main() {
    std::process::exit(hmf_cli::main_with(hmf_cli::Cli::parse()));
}
