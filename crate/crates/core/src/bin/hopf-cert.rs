fn main() {
    std::process::exit(hopf_cert::cli::main_from(std::env::args_os()));
}
