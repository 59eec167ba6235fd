fn main() {
    std::process::exit(grassmin_cli::main_with(std::env::args_os()));
}
