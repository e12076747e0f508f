fn main() {
    std::process::exit(qfibre::cli::main_with_args(std::env::args_os()));
}
