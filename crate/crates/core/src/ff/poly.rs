//! Dense polynomials over a prime field, coefficients low-to-high.

use super::arith::{inv_mod, mul_mod};

pub type Poly = Vec<u64>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn from_signed(coeffs: &[i64], p: u64) -> Poly {
    trim(coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect())
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod(b[db], p);
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod(r[dr], lead_inv, p);
        q[dr - db] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            let t = mul_mod(c, bj, p);
            r[dr - db + j] = (r[dr - db + j] + p - t) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    divrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = inv_mod(a[d], p);
            a[..=d].iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn derivative(a: &[u64], p: u64) -> Poly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect(),
    )
}

pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub fn powmod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Poly {
    let mut acc: Poly = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

/// Irreducibility of a monic `f` of degree `k`: `gcd(x^(p^i) - x, f) = 1` for
/// `1 <= i < k` and `x^(p^k) = x mod f`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = match degree(f) {
        Some(k) if k >= 1 => k,
        _ => return false,
    };
    if k == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    for i in 1..=k {
        h = powmod(&h, p, f, p);
        if i < k {
            let g = gcd(&sub(&h, &x, p), f, p);
            if g.len() != 1 {
                return false;
            }
        }
    }
    h == rem(&x, f, p)
}

/// Lexicographically smallest monic irreducible of degree `k`, comparing
/// coefficient tuples `(c0, c1, ..., c_{k-1})` from the constant term up.
pub fn smallest_irreducible(p: u64, k: usize) -> Poly {
    let mut tail = vec![0u64; k];
    loop {
        let mut f = tail.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // odometer with c0 most significant
        let mut i = k;
        loop {
            i -= 1;
            tail[i] += 1;
            if tail[i] < p {
                break;
            }
            tail[i] = 0;
            assert!(i > 0, "no irreducible polynomial of degree {k} over F_{p}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_root(f: &[u64], p: u64) -> bool {
        (0..p).any(|x| eval(f, x, p) == 0)
    }

    #[test]
    fn low_degree_irreducibility_matches_root_test() {
        for p in [2u64, 3, 5, 7] {
            for c0 in 0..p {
                for c1 in 0..p {
                    let f = vec![c0, c1, 1];
                    assert_eq!(is_irreducible(&f, p), !has_root(&f, p));
                    for c2 in 0..p {
                        let g = vec![c0, c1, c2, 1];
                        assert_eq!(is_irreducible(&g, p), !has_root(&g, p));
                    }
                }
            }
        }
    }

    #[test]
    fn smallest_irreducible_examples() {
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        // x^2 + 1 is irreducible mod 11 since -1 is a non-residue
        assert_eq!(smallest_irreducible(11, 2), vec![1, 0, 1]);
        let f = smallest_irreducible(5, 4);
        assert!(is_irreducible(&f, 5));
    }

    #[test]
    fn divrem_reconstructs() {
        let p = 7;
        let a = vec![3, 0, 5, 1, 6];
        let b = vec![2, 1, 3];
        let (q, r) = divrem(&a, &b, p);
        assert_eq!(add(&mul(&q, &b, p), &r, p), trim(a));
        assert!(degree(&r).is_none_or(|d| d < 2));
    }
}
