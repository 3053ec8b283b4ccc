fn main() {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut err = std::io::stderr();
    let code = lclass_cli::run(std::env::args_os(), &mut out, &mut err);
    std::process::exit(code);
}
