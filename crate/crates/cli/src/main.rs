fn main() {
    std::process::exit(gsws_cli::run(std::env::args_os()));
}
