fn main() {
    std::process::exit(cyclokzb::cli::run(std::env::args_os()));
}
