fn main() {
    std::process::exit(qfodc::cli::main_with_args(std::env::args_os()));
}
