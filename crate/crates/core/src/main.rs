fn main() {
    std::process::exit(delforge::cli::run(std::env::args_os()));
}
