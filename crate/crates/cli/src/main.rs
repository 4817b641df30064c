use std::process::ExitCode;

use clap::Parser;
use fqext_cli::{emit, exit_code, run, Cli, THREADS_ENV};

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_ENV}={raw:?} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let result = run(&cli);
    let code = exit_code(&result);
    match &result {
        Ok(report) => {
            if let Err(e) = emit(&cli, report) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if code != 0 {
                eprintln!("some assertions failed; see the pass column");
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(code as u8)
}
