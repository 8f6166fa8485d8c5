fn main() {
    std::process::exit(repdecomp_cli::run(std::env::args_os()));
}
