// For l = 5 the even-degree model splits into two genus-2 curves with equal
// L-polynomials.

use hfq::curves::{count_hyperelliptic, split_models};
use hfq::verify::check_l5_split;
use hfq::zeta::lpoly_from_counts;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (q, z) = (11, 3);
    let (h1, h2) = split_models(5, q, z);
    for (name, h) in [("H1", &h1), ("H2", &h2)] {
        let counts = [count_hyperelliptic(h, 1)?, count_hyperelliptic(h, 2)?];
        let l = lpoly_from_counts(&counts, q, 2)?;
        println!("{name}: y^2 = {:?}, L = {:?}", h.coeffs, l.coeffs);
    }
    let r = check_l5_split(q, z)?;
    println!("L(C) = L(H1) L(H2): {:?}", r.status);
    assert!(r.is_verified());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("jacobian_split_l5 example failed");
}
