fn main() {
    std::process::exit(qtriang::cli::main_with_args(std::env::args_os()));
}
