fn main() {
    std::process::exit(mindeg::cli::main_with_args(std::env::args_os()));
}
