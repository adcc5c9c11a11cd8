fn main() {
    std::process::exit(hypermono::cli::main_with_args(std::env::args_os()));
}
