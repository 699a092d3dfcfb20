fn main() {
    std::process::exit(compatri::cli::main_with_args(std::env::args_os()));
}
