// L-polynomials from point counts, and back.

use hfq::curves::{count_points_range, CurveInstance};
use hfq::zeta::{counts_from_lpoly, dickson_t, lpoly_from_counts};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (m, s) in [(1, 3), (2, 2)] {
        let c = CurveInstance::from_ms(5, m, s, 11, 2)?;
        let g = c.genus()? as usize;
        let counts = count_points_range(&c, g as u32)?;
        let l = lpoly_from_counts(&counts, 11, g)?;
        println!("(m, s) = ({m}, {s}): L = {:?}", l.coeffs);
        println!("  |N_1 - 12| = {}", (counts[0] as i64 - 12).abs());
        println!("  L(1) = {}, Weil ok: {}", l.at_one(), l.weil_report().ok);
        // counts past k = g follow from L alone
        let n5 = counts_from_lpoly(&l, 5)?;
        assert_eq!(n5, count_points_range(&c, 5)?[4] as i128);
        println!("  N_5 = {n5}");
    }

    let row: Vec<i128> = (0..=3).map(|i| dickson_t(6, i)).collect::<Result<_, _>>()?;
    println!("T(6, i) = {row:?}");
    assert_eq!(row, [1, 6, 9, 2]);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("zeta_polynomial example failed");
}
