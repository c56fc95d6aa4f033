use clap::Parser;

fn main() {
    let cli = gl3char::cli::Cli::parse();
    match gl3char::cli::run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(2);
        }
    }
}
