fn main() {
    std::process::exit(plexus_cli::commands::main_with(std::env::args_os()));
}
