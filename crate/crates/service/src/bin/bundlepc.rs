fn main() {
    let code = bundlepc::cli::run_cli(std::env::args_os(), &mut std::io::stderr());
    std::process::exit(code);
}
