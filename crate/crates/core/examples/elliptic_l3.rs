// For l = 3 the Jacobian splits into two elliptic curves related by a
// 3-isogeny and a twist by -3.

use hfq::curves::{elliptic_e1_e2, isogeny_phi, twisted_e2};
use hfq::ff::legendre_symbol;
use hfq::verify::check_l3_suite;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (q, z) = (13, 5);
    let (e1, e2) = elliptic_e1_e2(q, z)?;
    let twist = twisted_e2(q, z)?;
    println!("E1: {:?}\nE2: {:?}", e1, e2);
    println!(
        "#E1 = {}, #E2 = {}, a1 = {}, a2 = {}, (-3/q) = {}",
        e1.count(),
        e2.count(),
        e1.trace(),
        e2.trace(),
        legendre_symbol(-3, q)
    );
    for pt in e1.points().into_iter().take(4) {
        let img = isogeny_phi(q, z, pt)?;
        println!("  {pt:?} -> {img:?}");
        assert!(twist.contains(img));
    }
    let r = check_l3_suite(q, z)?;
    println!("suite: {:?}", r.status);
    assert!(r.is_verified());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("elliptic_l3 example failed");
}
