fn main() {
    std::process::exit(lambda_skeletons::cli::main_with_std());
}
