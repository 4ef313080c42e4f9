fn main() {
    std::process::exit(surfarc_cli::run());
}
