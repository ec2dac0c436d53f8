use clap::Parser;

fn main() {
    std::process::exit(twodim::cli::run(twodim::cli::Cli::parse()));
}
