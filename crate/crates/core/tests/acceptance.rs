//! The eleven acceptance criteria, one line each.

use qfodc::cli::suite::CRITERIA;

fn main() {
    let mut failed = Vec::new();
    for c in CRITERIA.iter() {
        let r = c.run();
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let witness = r.witness.as_deref().map(|w| format!(": {w}")).unwrap_or_default();
        println!("criterion {:>2} [{status}] {} ({} ms){witness}", c.number, c.title, r.elapsed_ms);
        if !r.passed() {
            failed.push(c.number);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
