fn main() {
    std::process::exit(aware_dyn::main_with_args(std::env::args_os()));
}
