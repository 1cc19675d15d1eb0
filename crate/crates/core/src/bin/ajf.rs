fn main() {
    std::process::exit(ajf_core::cli::main_with_args(std::env::args_os()));
}
