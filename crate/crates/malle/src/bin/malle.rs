fn main() {
    std::process::exit(malle::cli::run(std::env::args_os()));
}
