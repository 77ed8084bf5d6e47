//! Runs a few verification suites and prints their reports.

use cyclokzb::cli::{run_suite, RunConfig};

fn main() -> cyclokzb::Result<()> {
    let cfg = RunConfig::new(None, 8, 128)?;
    for name in ["hain", "dims", "heads", "bernoulli"] {
        let r = run_suite(name, &cfg)?;
        println!("{:<10} {}", name, if r.pass { "ok" } else { "FAILED" });
    }
    Ok(())
}
