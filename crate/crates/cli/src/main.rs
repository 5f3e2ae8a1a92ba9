use clap::Parser;

fn main() {
    let cli = spintop::Cli::parse();
    if let Err(e) = spintop::run(cli) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
