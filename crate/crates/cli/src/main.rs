fn main() {
    std::process::exit(ellipsoid_cli::run(std::env::args_os()));
}
