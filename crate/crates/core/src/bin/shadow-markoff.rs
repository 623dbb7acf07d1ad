fn main() -> std::process::ExitCode {
    shadow_markoff::cli::run()
}
