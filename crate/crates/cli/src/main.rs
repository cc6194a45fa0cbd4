use std::io::Write;

fn main() {
    let (code, text) = ratperiod_cli::run(std::env::args_os().skip(1));
    // a closed pipe is not an error worth reporting
    let _ = if code == ratperiod_cli::EXIT_OK {
        writeln!(std::io::stdout().lock(), "{text}")
    } else {
        writeln!(std::io::stderr().lock(), "{text}")
    };
    std::process::exit(code);
}
