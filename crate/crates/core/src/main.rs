fn main() {
    std::process::exit(sarct::cli::main_with_args(std::env::args_os()));
}
