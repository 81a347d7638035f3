fn main() {
    std::process::exit(twisted_bruhat::cli::main_from_env());
}
