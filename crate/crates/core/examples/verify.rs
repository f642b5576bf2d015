//! Runs the property suite and prints one line per check.
//!
//! cargo run --release --example verify -- [seed] [check ids...]

use canonical_bessel::verify;

fn main() -> canonical_bessel::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);
    let ids: Vec<String> = args.collect();
    let selection = if ids.is_empty() { None } else { Some(ids) };
    let report = verify::run_verify(selection, seed)?;
    for e in &report.entries {
        let status = if e.pass { "pass" } else { "FAIL" };
        println!("{status}  {:<34} err {:>10.3e}  tol {:>8.1e}  {:>9.1} ms", e.check_id, e.max_error, e.tolerance, e.runtime_ms);
    }
    println!("{}", if report.all_pass() { "all checks pass" } else { "some checks failed" });
    Ok(())
}
