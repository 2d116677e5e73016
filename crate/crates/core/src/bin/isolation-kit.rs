fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(isolation_kit::cli::run(&argv));
}
