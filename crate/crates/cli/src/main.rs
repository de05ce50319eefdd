fn main() {
    std::process::exit(lexkernel_cli::main_with(std::env::args_os().collect()));
}
