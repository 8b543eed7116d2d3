fn main() {
    let (code, report) = modcat::cli::run(std::env::args());
    print!("{}", report.output());
    std::process::exit(code);
}
