// Point counts of y^5 = t^2 (1-t)^3 (1-3t)^2 over F_{11^k}, compared with
// q^k + 1 + sum_i F_{i, q^k}.

use hfq::curves::{count_points_range, CurveInstance};
use hfq::verify::{check_theorem1, instance_f_values};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = CurveInstance::from_ms(5, 2, 3, 11, 3)?;
    println!("exponents {:?}, genus {}", c.exponents, c.genus()?);

    let counts = count_points_range(&c, 4)?;
    println!("N_1..N_4 = {counts:?}");
    assert_eq!(counts[0], 24);

    for (i, f) in instance_f_values(&c, 1)?.iter().enumerate() {
        println!("F_{} = {f}", i + 1);
    }
    for k in 1..=2 {
        let r = check_theorem1(&c, k)?;
        println!("k = {k}: {:?}", r.status);
        assert!(r.is_verified());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("point_counts example failed");
}
