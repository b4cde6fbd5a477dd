fn main() {
    std::process::exit(nssets::cli::main());
}
