fn main() {
    // Panics are reported as JSON by `cli::run`.
    std::panic::set_hook(Box::new(|_| {}));
    let code = linlike::cli::run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
