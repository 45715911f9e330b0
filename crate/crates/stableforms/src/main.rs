fn main() {
    std::process::exit(stableforms::cli::run());
}
