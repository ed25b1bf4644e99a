fn main() {
    std::process::exit(cygrowth::cli::main_from_args(std::env::args_os()));
}
