fn main() {
    std::process::exit(csgreen_cli::run(std::env::args_os()));
}
