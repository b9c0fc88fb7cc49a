fn main() {
    std::process::exit(regamma::cli::run(std::env::args_os()));
}
