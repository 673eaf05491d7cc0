fn main() {
    std::process::exit(kummer::cli::main_with_args(std::env::args_os()));
}
