fn main() {
    wittkit::cli::main();
}
