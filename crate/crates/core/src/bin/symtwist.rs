fn main() {
    std::process::exit(symtwist::cli::main_with_args(std::env::args_os()));
}
