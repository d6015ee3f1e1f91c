fn main() {
    std::process::exit(qthermo_cli::run(std::env::args_os()));
}
