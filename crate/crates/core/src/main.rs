fn main() {
    std::process::exit(fkmixer::cli::run(std::env::args_os()));
}
