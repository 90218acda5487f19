fn main() {
    std::process::exit(hookschur::cli::main_with_args(std::env::args_os()));
}
