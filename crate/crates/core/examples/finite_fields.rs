// Field arithmetic, discrete logs and multiplicative characters on F_{5^3}.

use hfq::ff::{make_extension, MultChar};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = make_extension(5, 3)?;
    println!("F_{} with modulus {:?}", f.order(), f.modulus_poly());

    let g = f.generator();
    let x = f.from_coeffs(&[2, 0, 1])?;
    let y = f.mul(x, f.inv(x).ok_or("x is zero")?);
    assert_eq!(y, f.one());
    let lx = f.dlog(x).ok_or("no log")?;
    assert_eq!(f.pow(g, lx), x);
    println!("x = {:?}, log_g x = {lx}, N(x) = {:?}", f.coeffs(x), f.coeffs(f.norm_to_base(x)));

    // a character of order 31 on the 124 units, evaluated as a power of zeta_31
    let chi = MultChar::canonical(&f, 31)?;
    let v = chi.eval(&f, x).ok_or("chi(0)")?;
    println!("chi(x) = zeta_31^{v}, chi(-1) = {}", chi.sign_at_minus_one(&f));

    // orthogonality: sum over x of chi(x) vanishes for nontrivial chi
    let mut counts = vec![0u64; 31];
    for u in f.units() {
        counts[chi.eval(&f, u).unwrap() as usize] += 1;
    }
    assert!(counts.iter().all(|&c| c == 4));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("finite_fields example failed");
}
