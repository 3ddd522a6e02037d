fn main() {
    std::process::exit(hpm_engage::cli::run(std::env::args_os()));
}
