fn main() { std::process::exit(ztile::cli::main_with_args(std::env::args_os())) }
