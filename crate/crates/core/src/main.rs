fn main() {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = bgf::cli::run(std::env::args_os(), &mut stdout) {
        match e {
            bgf::cli::CliError::Usage(msg) => eprint!("{msg}"),
            other => eprintln!("error: {other}"),
        }
        std::process::exit(2);
    }
}
