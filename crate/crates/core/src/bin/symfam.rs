fn main() {
    let result = symfam::cli::run(std::env::args_os());
    print!("{}", result.report);
    if let Some(err) = &result.error {
        eprint!("{err}");
        if !err.ends_with('\n') {
            eprintln!();
        }
    }
    std::process::exit(result.exit_code);
}
