fn main() {
    std::process::exit(katolab::harness::cli::main_with_args(std::env::args_os()));
}
