fn main() {
    std::process::exit(autfi::cli::main_with_args(std::env::args_os()));
}
