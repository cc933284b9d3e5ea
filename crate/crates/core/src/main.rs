fn main() -> std::process::ExitCode {
    scoregame::cli::main()
}
