fn main() {
    std::process::exit(adiamis::cli::main_with_args(std::env::args_os()));
}
