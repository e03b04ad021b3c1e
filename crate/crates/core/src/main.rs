fn main() {
    std::process::exit(siegel_padic::cli::run(std::env::args_os()));
}
