fn main() {
    std::process::exit(pindex::cli::main());
}
