fn main() {
    std::process::exit(boxpleat::cli::run(std::env::args_os()));
}
