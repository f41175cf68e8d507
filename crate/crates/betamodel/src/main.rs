fn main() {
    std::process::exit(betamodel::cli::run(std::env::args_os()));
}
