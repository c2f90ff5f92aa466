fn main() {
    std::process::exit(mixed_bad::cli::main(std::env::args_os()));
}
