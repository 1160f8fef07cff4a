//! Run every verification suite and print a summary.
//!
//! cargo run --release --example run_suites -- 5

use posalg::verify::{run, Suite, SuiteConfig};

fn main() -> posalg::error::Result<()> {
    let max_size = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    for suite in Suite::EACH {
        let start = std::time::Instant::now();
        let report = run(&SuiteConfig { max_size, ..SuiteConfig::new(suite) })?;
        println!("{suite:<18} cases {:>4}  failures {}  {:.2?}", report.cases, report.failures, start.elapsed());
        if let Some(f) = report.first_failure() {
            println!("  {}", serde_json::to_string(f).expect("verdicts serialize"));
        }
    }
    Ok(())
}
