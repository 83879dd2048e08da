fn main() {
    std::process::exit(windowed_shor::cli::run_command(std::env::args_os()));
}
