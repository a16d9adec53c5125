fn main() -> std::process::ExitCode {
    pierced::cli::main()
}
