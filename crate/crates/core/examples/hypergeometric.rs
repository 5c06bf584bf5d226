// Jacobi sums and 2F1 over F_11, through the defining sum and through the
// expansion over all characters.

use hfq::ff::{FieldCtx, MultChar};
use hfq::hgf::{hgf2f1_defn35, hgf2f1_thm36, jacobi_sum, transform_thm44};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldCtx::shared(11, 1)?;
    let eta = MultChar::canonical(&f, 5)?;
    let eps = MultChar::trivial(&f);

    let j = jacobi_sum(&f, &eta, &eta.pow(2))?;
    println!("J(eta, eta^2) = {j}, |J|^2 = {}", (&j * &j.conj()));

    let (a, b) = (eta.pow(3), eta.pow(2));
    for x in 0..11 {
        let x = f.from_int(x);
        let d = hgf2f1_defn35(&f, &a, &b, &eps, x)?;
        let t = hgf2f1_thm36(&f, &a, &b, &eps, x)?;
        assert_eq!(d, t);
    }
    let v = hgf2f1_defn35(&f, &a, &b, &eps, f.from_int(3))?.scale_int(11);
    println!("11 * 2F1(eta^3, eta^2; eps | 3) = {v}");

    let (lhs, rhs) = transform_thm44(&f, &a, &b, &eta, f.from_int(7))?;
    assert_eq!(lhs, rhs);
    println!("transformation at x = 7: {lhs}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("hypergeometric example failed");
}
