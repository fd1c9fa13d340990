fn main() {
    std::process::exit(spr::cli::main_with_args(std::env::args_os()));
}
