fn main() {
    std::process::exit(wass1::cli::run());
}
