fn main() {
    std::process::exit(smax::cli::main_with_args(std::env::args_os()));
}
