fn main() {
    std::process::exit(qmap_cli::run_from_env());
}
