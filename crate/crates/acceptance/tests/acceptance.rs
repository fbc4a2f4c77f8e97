//! Runs every acceptance criterion at its stated tolerance and prints one verdict per line.
//!
//! `DIVZETA_MOMENT_TMAX` shortens the moment suite (e.g. `2000` for the smoke variant);
//! the default is the full `[0, 20000]` range.

use std::process::ExitCode;

fn main() -> ExitCode {
    let t_max = std::env::var("DIVZETA_MOMENT_TMAX").ok().and_then(|v| v.parse().ok()).unwrap_or(2e4);
    let mut failed = Vec::new();
    let mut details = String::new();
    for id in 1..=8 {
        match divzeta::verify::run_one(id, t_max) {
            Ok(report) => {
                println!("{}", report.summary());
                details.push_str(&report.to_string());
                if !report.passed() {
                    failed.push(id);
                }
            }
            Err(e) => {
                println!("criterion {id} FAIL: aborted with error: {e}");
                failed.push(id);
            }
        }
    }
    println!("\n{details}");
    if failed.is_empty() {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of 8 criteria fail: {failed:?}", failed.len());
        ExitCode::FAILURE
    }
}
