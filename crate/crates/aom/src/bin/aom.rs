use aom::cli::{emit_report, run_command, CliError};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    match run_command(&argv) {
        Ok(output) => {
            if let Err(e) = emit_report(&output.report, output.format, output.out.as_deref()) {
                eprintln!("error: {e}");
                std::process::exit(3);
            }
        }
        Err(err) => {
            let code = err.exit_code() as i32;
            match err {
                CliError::Help(text) => {
                    println!("{text}");
                }
                CliError::Usage(msg) | CliError::Data(msg) => {
                    eprintln!("{msg}");
                }
                CliError::Compute { report, message } => {
                    eprintln!("error: {message}");
                    let _ = emit_report(&report, Default::default(), None);
                }
            }
            std::process::exit(code);
        }
    }
}
