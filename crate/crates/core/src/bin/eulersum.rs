fn main() {
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    let code = eulersum::cli::run(std::env::args_os(), &mut out, &mut err);
    std::process::exit(code);
}
