fn main() {
    std::process::exit(distgame::cli::run_command(std::env::args_os()));
}
