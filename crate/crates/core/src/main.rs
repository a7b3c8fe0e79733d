fn main() {
    std::process::exit(tuttelab::cli::run(std::env::args_os()));
}
