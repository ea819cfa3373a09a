fn main() {
    std::process::exit(nobler::cli::run(std::env::args()));
}
