fn main() {
    std::process::exit(esgame_cli::run(std::env::args_os()));
}
