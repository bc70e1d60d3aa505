fn main() {
    std::process::exit(wqed::cli::run());
}
