fn main() {
    std::process::exit(forest_closeness::eval::cli::main());
}
