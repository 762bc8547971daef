fn main() -> std::process::ExitCode {
    convex_cyclic::cli::main()
}
