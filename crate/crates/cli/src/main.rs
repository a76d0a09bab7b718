fn main() {
    std::process::exit(fraclog_cli::run(std::env::args_os()));
}
