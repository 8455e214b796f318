fn main() {
    std::process::exit(bottcheck::cli::run());
}
