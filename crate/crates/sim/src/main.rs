fn main() {
    std::process::exit(irs_sim::cli::run());
}
