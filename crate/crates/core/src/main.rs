fn main() {
    std::process::exit(stochop::cli::run(std::env::args_os()));
}
