fn main() {
    std::process::exit(mhd_enclose::cli::main_with(std::env::args_os()));
}
