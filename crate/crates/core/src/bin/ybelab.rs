fn main() {
    std::process::exit(ybelab::cli::run(std::env::args_os()));
}
