// Exact arithmetic in Z[zeta_5] and its Galois action.

use hfq::cyclo::{CycInt, CycPoly, CycRat};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let z = |j| CycInt::zeta_pow(5, j);
    let two = CycInt::from_int(5, 2);

    let f1 = CycInt::from_int(5, 4) + &two * &(z(2) + z(3));
    let f2 = CycInt::from_int(5, 2) - &two * &(z(2) + z(3));
    println!("f1 = {f1}");
    println!("f2 = {f2}");
    println!("f1 + f2 = {}, f1 * f2 = {}", &f1 + &f2, &f1 * &f2);
    println!("sigma_2(f1) = {}", f1.galois_apply(2)?);
    println!("norm(f1) = {}, |f1| ~ {:.4}", f1.norm(), f1.to_complex().norm());

    let quotient = (&f1 * &f2).div_exact(&f2)?;
    assert_eq!(quotient, f1);

    let r = CycRat::new(f1.clone(), 11)?;
    println!("f1/11 = {r}, inverse = {}", r.inv()?);

    // (1 + f1 T + 11 T^2)(1 + f2 T + 11 T^2) has rational coefficients
    let quad = |f: &CycInt| CycPoly::new(5, vec![CycInt::one(5), f.clone(), CycInt::from_int(5, 11)]);
    let p = quad(&f1)?.mul(&quad(&f2)?)?;
    println!("product = {}", p);
    let ints = p.as_integer_coeffs().ok_or("not rational")?;
    assert_eq!(ints.iter().map(|v| v.to_string()).collect::<Vec<_>>(), ["1", "6", "26", "66", "121"]);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("cyclotomic example failed");
}
