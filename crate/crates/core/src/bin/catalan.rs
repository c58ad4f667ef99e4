fn main() {
    std::process::exit(catalan_core::cli::run());
}
