use clap::Parser;

fn main() {
    let cli = constrank::cli::Cli::parse();
    let code = match constrank::cli::run(cli, &mut std::io::stdout().lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            constrank::cli::EXIT_USAGE
        }
    };
    std::process::exit(code);
}
