fn main() {
    std::process::exit(popov_verify::cli::main_entry(std::env::args_os()));
}
