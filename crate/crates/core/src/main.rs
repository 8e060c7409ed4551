fn main() {
    std::process::exit(stein_steps::cli::run(std::env::args()));
}
