fn main() -> std::process::ExitCode {
    edd::cli::run(std::env::args_os())
}
