fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let (code, out, err) = qtoric::cli::run(&argv);
    if !out.is_empty() {
        print!("{out}");
    }
    if !err.is_empty() {
        eprint!("{err}");
    }
    std::process::exit(code);
}
