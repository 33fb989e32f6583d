use clap::Parser;
use cyclo2::cli::{configure_threads, run, RunConfig};
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let start = std::time::Instant::now();
    let result = configure_threads().and_then(|_| run(&cfg));
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("cyclo2: {e}");
            if e.is_internal() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
