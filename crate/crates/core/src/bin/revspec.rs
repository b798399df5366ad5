fn main() {
    std::process::exit(revspec::cli::run(std::env::args_os()));
}
