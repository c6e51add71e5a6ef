use std::io::{stderr, stdout};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let code = dmp_cli::run_cli(&argv, &mut stdout().lock(), &mut stderr().lock());
    std::process::exit(code);
}
