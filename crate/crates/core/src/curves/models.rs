use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::{poly, FieldCtx, FieldElement};

/// `a + b*z`, a coefficient of a model polynomial with `z` left symbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearInZ {
    pub a: i128,
    pub b: i128,
}

impl LinearInZ {
    pub fn eval(&self, p: u64, z: u64) -> u64 {
        let p = p as i128;
        (self.a + self.b * (z as i128 % p)).rem_euclid(p) as u64
    }
}

/// `y^2 = F(x)` with `F` over a prime field, coefficients low-to-high.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticModel {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl HyperellipticModel {
    pub fn new(p: u64, coeffs: Vec<u64>) -> HyperellipticModel {
        let coeffs = poly::trim(coeffs.into_iter().map(|c| c % p).collect());
        HyperellipticModel { p, coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        poly::degree(&self.coeffs)
    }

    pub fn is_squarefree(&self) -> bool {
        let d = poly::derivative(&self.coeffs, self.p);
        !self.coeffs.is_empty() && poly::gcd(&self.coeffs, &d, self.p).len() == 1
    }

    /// Genus of the smooth model, `floor((deg - 1) / 2)`.
    pub fn genus(&self) -> usize {
        self.degree().map_or(0, |d| d.saturating_sub(1) / 2)
    }
}

fn binom(n: u64, k: u64) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// `X^(2l) + 2(1-2z) X^l + 1` over `F_p`.
pub fn general_birational_model(l: u64, p: u64, z: u64) -> HyperellipticModel {
    let l = l as usize;
    let mut c = vec![0u64; 2 * l + 1];
    c[0] = 1;
    c[2 * l] = 1;
    c[l] = LinearInZ { a: 2, b: -4 }.eval(p, z);
    HyperellipticModel::new(p, c)
}

/// Coefficients `c_0, ..., c_l` of `X^0, X^2, ..., X^(2l)` obtained from the
/// general model by `X -> (X+1)/(X-1)`, multiplying through by `(X-1)^(2l)`
/// and dividing by 4.
pub fn even_degree_coefficients(l: u64) -> Vec<LinearInZ> {
    // (X+1)^(2l) + (X-1)^(2l) = 2 sum_j C(2l, 2j) X^(2j)
    // (X+1)^l (X-1)^l = (X^2 - 1)^l = sum_j (-1)^(l-j) C(l, j) X^(2j)
    (0..=l)
        .map(|j| {
            let even = 2 * binom(2 * l, 2 * j);
            let sign = if (l - j).is_multiple_of(2) { 1 } else { -1 };
            let mid = sign * binom(l, j);
            // even + 2(1 - 2z) mid, over 4
            let (a, b) = (even + 2 * mid, -4 * mid);
            debug_assert!(a % 4 == 0 && b % 4 == 0);
            LinearInZ { a: a / 4, b: b / 4 }
        })
        .collect()
}

/// The even-degree model `y^2 = sum_j c_j(z) X^(2j)` over `F_p`.
pub fn even_degree_model(l: u64, p: u64, z: u64) -> HyperellipticModel {
    let mut c = vec![0u64; 2 * l as usize + 1];
    for (j, cj) in even_degree_coefficients(l).iter().enumerate() {
        c[2 * j] = cj.eval(p, z);
    }
    HyperellipticModel::new(p, c)
}

/// `H1: y^2 = sum c_j x^j` and `H2: y^2 = sum c_(l-j) x^j`.
pub fn split_models(l: u64, p: u64, z: u64) -> (HyperellipticModel, HyperellipticModel) {
    let c: Vec<u64> = even_degree_coefficients(l)
        .iter()
        .map(|cj| cj.eval(p, z))
        .collect();
    let rev: Vec<u64> = c.iter().rev().copied().collect();
    (HyperellipticModel::new(p, c), HyperellipticModel::new(p, rev))
}

/// Points on the smooth model of `y^2 = F(x)` over `F_{p^k}`.
pub fn count_hyperelliptic(h: &HyperellipticModel, k: u32) -> Result<u64> {
    if h.p == 2 {
        return Err(Error::PreconditionViolated("characteristic 2".into()));
    }
    if !h.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let ctx = FieldCtx::shared(h.p, k)?;
    let point_weight = |v: u64| -> u64 {
        let fx = ctx.eval_prime_poly(&h.coeffs, FieldElement::from_packed(v));
        if fx.is_zero() {
            1
        } else if ctx.is_square(fx) {
            2
        } else {
            0
        }
    };
    const CHUNK: u64 = 1 << 14;
    let order = ctx.order();
    let affine: u64 = (0..order.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| (c * CHUNK..((c + 1) * CHUNK).min(order)).map(point_weight).sum::<u64>())
        .sum();
    let deg = h.degree().expect("nonzero polynomial");
    let lead = ctx.from_int(h.coeffs[deg] as i64);
    let infinity = if deg % 2 == 1 {
        1
    } else if ctx.is_square(lead) {
        2
    } else {
        0
    };
    Ok(affine + infinity)
}
