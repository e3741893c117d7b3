fn main() { std::process::exit(q22::cli::run()); }
