fn main() {
    std::process::exit(qpalign::cli::run());
}
