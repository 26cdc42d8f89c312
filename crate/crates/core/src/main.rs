fn main() {
    std::process::exit(hidcorr::cli::run_from(std::env::args_os()));
}
