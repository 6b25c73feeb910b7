fn main() {
    let (code, out) = aqpath::cli::run(std::env::args_os());
    if code != aqpath::cli::EXIT_USAGE {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    std::process::exit(code);
}
