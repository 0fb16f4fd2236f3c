fn main() {
    std::process::exit(hjw_cli::main_with_args(std::env::args_os()));
}
