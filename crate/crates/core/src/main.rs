fn main() {
    std::process::exit(rifix::cli::main_with(std::env::args_os()));
}
