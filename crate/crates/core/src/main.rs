fn main() {
    std::process::exit(closure_core::cli::dispatch(std::env::args_os()));
}
