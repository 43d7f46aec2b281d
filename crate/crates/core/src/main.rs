fn main() {
    std::process::exit(darkgate::cli::main_with_args(std::env::args_os()));
}
