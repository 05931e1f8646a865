fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let out = spin_ed::cli::run(&argv);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
