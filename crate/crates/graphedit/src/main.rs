fn main() {
    std::process::exit(graphedit::cli::run(std::env::args_os()));
}
