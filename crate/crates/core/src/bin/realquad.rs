fn main() {
    std::process::exit(realquad::cli::main_with_args(std::env::args_os().skip(1)));
}
