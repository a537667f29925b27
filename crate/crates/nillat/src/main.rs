fn main() {
    std::process::exit(nillat::cli::main());
}
