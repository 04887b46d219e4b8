fn main() {
    std::process::exit(quatherm::cli::run());
}
