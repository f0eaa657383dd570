fn main() {
    std::process::exit(lamlab::cli::dispatch(std::env::args_os()));
}
