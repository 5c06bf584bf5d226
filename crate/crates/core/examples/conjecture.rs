// The factorisation L(T) = prod_i (1 + F_i T + q T^2) and its pairing.

use hfq::curves::CurveInstance;
use hfq::verify::{check_conjecture_full, check_conjecture_partial, Status};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = CurveInstance::from_ms(5, 2, 3, 11, 3)?;
    let r = check_conjecture_full(&c)?;
    println!("l = 5, q = 11, z = 3: {:?}", r.status);
    for p in r.witness["pairing"].as_array().into_iter().flatten() {
        println!("  F_{} -> {}", p["i"], p["quadratic"].as_str().unwrap_or(""));
    }
    assert_eq!(r.status, Status::Verified);

    // l = 7 is open; the first three counts are cheap evidence
    let c = CurveInstance::from_ms(7, 1, 6, 29, 5)?;
    let r = check_conjecture_partial(&c, 3)?;
    println!("l = 7, q = 29, z = 5, k <= 3: {:?}", r.status);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("conjecture example failed");
}
