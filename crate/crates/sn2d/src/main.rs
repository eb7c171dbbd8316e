fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(sn2d::cli::run(&args));
}
