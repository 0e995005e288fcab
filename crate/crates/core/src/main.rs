use clap::Parser;

fn main() {
    let config = leab::cli::RunConfig::parse();
    let code = leab::cli::run(&config, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
