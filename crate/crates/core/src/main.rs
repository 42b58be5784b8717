fn main() {
    std::process::exit(cuntzkit::cli::main_with_args(std::env::args_os()));
}
