use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match hurwitz_tnn::cli::run(std::env::args_os()) {
        Ok(outcome) => {
            if let Some(e) = outcome.json.get("error") {
                eprintln!("error: {}", e["message"].as_str().unwrap_or("see output"));
            }
            let mut out = std::io::stdout().lock();
            if out.write_all(outcome.render().as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err((code, text)) => {
            print!("{text}");
            ExitCode::from(code as u8)
        }
    }
}
