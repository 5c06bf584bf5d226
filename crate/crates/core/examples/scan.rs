// A small reproducible scan over primes and sampled z values.

use hfq::verify::{scan, Status, Verifier, ZPolicy};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let policy: ZPolicy = "sample:3:seed42".parse()?;
    let checks = vec!["theorem1".to_string(), "conjecture".to_string()];
    let reports = scan(&Verifier::default(), 5, 31, policy, &checks, 2)?;
    for r in &reports {
        println!(
            "q = {:>2} z = {:>2} {:<10} {:?}",
            r.params.q.unwrap_or(0),
            r.params.z.unwrap_or(0),
            r.check,
            r.status
        );
    }
    assert!(reports.iter().all(|r| r.status == Status::Verified));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("scan example failed");
}
