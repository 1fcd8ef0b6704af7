fn main() {
    std::process::exit(lindley::cli::run());
}
