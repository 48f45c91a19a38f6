fn main() {
    std::process::exit(alperin_labels::cli::run(std::env::args_os()));
}
