fn main() {
    std::process::exit(polar_concat::cli::main_with_env());
}
