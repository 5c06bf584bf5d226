use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::phi::cyclotomic_polynomial;
use crate::error::{Error, Result};
use crate::ff::arith::{euler_phi, gcd};

/// An element of `Z[zeta_n]`, stored as its canonical representative modulo
/// `Phi_n`: exactly `phi(n)` coefficients of `1, z, ..., z^(phi(n)-1)`.
#[derive(Clone, Debug)]
pub struct CycInt {
    n: u64,
    c: Vec<BigInt>,
}

/// Reduce `sum v[i] z^i` (any length) to canonical form.
fn reduce(n: u64, v: Vec<BigInt>) -> Vec<BigInt> {
    let nu = n as usize;
    let mut folded = vec![BigInt::zero(); nu];
    for (i, c) in v.into_iter().enumerate() {
        if !c.is_zero() {
            folded[i % nu] += c;
        }
    }
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    for i in (d..nu).rev() {
        let top = std::mem::take(&mut folded[i]);
        if top.is_zero() {
            continue;
        }
        for (j, &b) in phi[..d].iter().enumerate() {
            if b != 0 {
                folded[i - d + j] -= &top * b;
            }
        }
    }
    folded.truncate(d);
    folded
}

impl CycInt {
    pub fn new(n: u64, coeffs: Vec<BigInt>) -> CycInt {
        assert!(n >= 1);
        CycInt {
            n,
            c: reduce(n, coeffs),
        }
    }

    /// `sum_j counts[j] * zeta_n^j`, indices taken mod `n`.
    pub fn from_exponent_counts(n: u64, counts: &[i64]) -> CycInt {
        let nu = n as usize;
        let mut folded = vec![0i64; nu];
        for (j, &c) in counts.iter().enumerate() {
            folded[j % nu] += c;
        }
        Self::new(n, folded.into_iter().map(BigInt::from).collect())
    }

    pub fn zero(n: u64) -> CycInt {
        Self::from_int(n, 0)
    }

    pub fn one(n: u64) -> CycInt {
        Self::from_int(n, 1)
    }

    pub fn from_int(n: u64, v: impl Into<BigInt>) -> CycInt {
        let d = euler_phi(n) as usize;
        let mut c = vec![BigInt::zero(); d];
        c[0] = v.into();
        CycInt { n, c }
    }

    /// `zeta_n^j`, any integer `j`.
    pub fn zeta_pow(n: u64, j: i64) -> CycInt {
        let j = j.rem_euclid(n as i64) as usize;
        let mut v = vec![BigInt::zero(); j + 1];
        v[j] = BigInt::one();
        Self::new(n, v)
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_rational_integer(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.is_rational_integer().then(|| self.c[0].clone())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|v| v.to_i64())
    }

    /// Coefficients as `i64` when they all fit.
    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.c.iter().map(|v| v.to_i64()).collect()
    }

    /// Image in `Z[zeta_m]` under `zeta_n -> zeta_m^(m/n)`.
    pub fn embed(&self, m: u64) -> Result<CycInt> {
        if m == self.n {
            return Ok(self.clone());
        }
        if self.is_rational_integer() {
            return Ok(Self::from_int(m, self.c[0].clone()));
        }
        if !m.is_multiple_of(self.n) {
            return Err(Error::OrderMismatch(self.n, m));
        }
        let step = (m / self.n) as usize;
        let mut v = vec![BigInt::zero(); (self.c.len() - 1) * step + 1];
        for (i, c) in self.c.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Ok(Self::new(m, v))
    }

    /// The element of `Z[zeta_m]` whose image in `Z[zeta_n]` is `self`,
    /// for `m | n`. Fails when `self` does not lie in the subring.
    pub fn restrict(&self, m: u64) -> Result<CycInt> {
        if m == self.n {
            return Ok(self.clone());
        }
        if m == 0 || !self.n.is_multiple_of(m) {
            return Err(Error::OrderMismatch(self.n, m));
        }
        if self.is_rational_integer() {
            return Ok(Self::from_int(m, self.c[0].clone()));
        }
        let rows = self.c.len();
        let cols = euler_phi(m) as usize;
        // columns: images of 1, zeta_m, ..., zeta_m^(cols-1); last column: self
        let mut a: Vec<Vec<BigRational>> = vec![Vec::with_capacity(cols + 1); rows];
        for i in 0..cols {
            let img = Self::zeta_pow(m, i as i64).embed(self.n)?;
            for (r, v) in img.c.iter().enumerate() {
                a[r].push(BigRational::from_integer(v.clone()));
            }
        }
        for (r, v) in self.c.iter().enumerate() {
            a[r].push(BigRational::from_integer(v.clone()));
        }
        let mut pivots = Vec::with_capacity(cols);
        let mut row = 0;
        for col in 0..cols {
            let Some(pr) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, pr);
            let inv = a[row][col].recip();
            for v in a[row].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = a[row].clone();
            for (r, line) in a.iter_mut().enumerate() {
                if r != row && !line[col].is_zero() {
                    let f = line[col].clone();
                    for (v, p) in line.iter_mut().zip(&pivot_row) {
                        *v -= &f * p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if a[row..].iter().any(|line| !line[cols].is_zero()) {
            return Err(Error::OrderMismatch(self.n, m));
        }
        let mut y = vec![BigInt::zero(); cols];
        for (r, &col) in pivots.iter().enumerate() {
            let v = &a[r][cols];
            if !v.is_integer() {
                return Err(Error::InexactDivision);
            }
            y[col] = v.to_integer();
        }
        Ok(Self::new(m, y))
    }

    /// Order both operands can be embedded into.
    fn common_order(&self, other: &CycInt) -> Result<u64> {
        let (a, b) = (self.n, other.n);
        if a == b || other.is_rational_integer() {
            Ok(a)
        } else if self.is_rational_integer() || b % a == 0 {
            Ok(b)
        } else if a % b == 0 {
            Ok(a)
        } else {
            Err(Error::OrderMismatch(a, b))
        }
    }

    fn aligned(&self, other: &CycInt) -> Result<(CycInt, CycInt)> {
        let m = self.common_order(other)?;
        Ok((self.embed(m)?, other.embed(m)?))
    }

    pub fn checked_add(&self, other: &CycInt) -> Result<CycInt> {
        let (a, b) = self.aligned(other)?;
        let c = a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect();
        Ok(CycInt { n: a.n, c })
    }

    pub fn checked_sub(&self, other: &CycInt) -> Result<CycInt> {
        let (a, b) = self.aligned(other)?;
        let c = a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect();
        Ok(CycInt { n: a.n, c })
    }

    pub fn checked_mul(&self, other: &CycInt) -> Result<CycInt> {
        let (a, b) = self.aligned(other)?;
        if a.is_rational_integer() {
            return Ok(b.scale(&a.c[0]));
        }
        if b.is_rational_integer() {
            return Ok(a.scale(&b.c[0]));
        }
        let mut v = vec![BigInt::zero(); 2 * a.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        Ok(Self::new(a.n, v))
    }

    pub fn scale(&self, k: &BigInt) -> CycInt {
        CycInt {
            n: self.n,
            c: self.c.iter().map(|x| x * k).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> CycInt {
        let mut acc = Self::one(self.n);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Content: gcd of the coefficients (zero for the zero element).
    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Divide every coefficient by the integer `k`, failing unless exact.
    pub fn div_int(&self, k: &BigInt) -> Result<CycInt> {
        let mut c = Vec::with_capacity(self.c.len());
        for x in &self.c {
            let (q, r) = x.div_rem(k);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            c.push(q);
        }
        Ok(CycInt { n: self.n, c })
    }

    /// Automorphism `zeta -> zeta^j`.
    pub fn galois_apply(&self, j: i64) -> Result<CycInt> {
        let n = self.n as i64;
        let j = j.rem_euclid(n);
        if gcd(j as u64, self.n) != 1 {
            return Err(Error::BadAutomorphism { j: j as u64, n: self.n });
        }
        let mut v = vec![BigInt::zero(); self.n as usize];
        for (i, c) in self.c.iter().enumerate() {
            v[(i as i64 * j % n) as usize] += c;
        }
        Ok(Self::new(self.n, v))
    }

    pub fn conj(&self) -> CycInt {
        self.galois_apply(-1).expect("-1 is always a unit")
    }

    /// Units `j` mod `n` with `galois_apply(j)` equal to `other`, smallest first.
    pub fn conjugating_automorphisms(&self, other: &CycInt) -> Vec<u64> {
        let Ok(m) = self.common_order(other) else {
            return Vec::new();
        };
        let (a, b) = (self.embed(m).unwrap(), other.embed(m).unwrap());
        (1..=m.max(1))
            .filter(|&j| gcd(j, m) == 1)
            .filter(|&j| a.galois_apply(j as i64).unwrap() == b)
            .collect()
    }

    /// Field norm down to `Q`: the product of all conjugates.
    pub fn norm(&self) -> BigInt {
        let (_, rest) = self.conjugate_product();
        let full = &rest * self;
        full.as_integer().expect("norm is rational")
    }

    /// `(sigma_1(x), prod_{j != 1} sigma_j(x))`.
    fn conjugate_product(&self) -> (CycInt, CycInt) {
        let mut acc = Self::one(self.n);
        for j in 2..self.n.max(2) {
            if gcd(j, self.n) == 1 {
                acc = &acc * &self.galois_apply(j as i64).unwrap();
            }
        }
        (self.clone(), acc)
    }

    /// `self / other` in `Q(zeta_n)`, which must land in `Z[zeta_n]`.
    pub fn div_exact(&self, other: &CycInt) -> Result<CycInt> {
        let (a, b) = self.aligned(other)?;
        if b.is_zero() {
            return Err(Error::InexactDivision);
        }
        if let Some(k) = b.as_integer() {
            return a.div_int(&k);
        }
        let (_, adj) = b.conjugate_product();
        let norm = (&adj * &b).as_integer().expect("norm is rational");
        (&a * &adj).div_int(&norm)
    }

    /// Multiplicative inverse in `Q(zeta_n)` as `(numerator, positive denominator)`.
    pub(crate) fn inverse_parts(&self) -> Result<(CycInt, BigInt)> {
        if self.is_zero() {
            return Err(Error::InexactDivision);
        }
        let (_, adj) = self.conjugate_product();
        let norm = (&adj * self).as_integer().expect("norm is rational");
        Ok(if norm.is_negative() {
            (-adj, -norm)
        } else {
            (adj, norm)
        })
    }

    /// Complex value under `zeta_n = exp(2 pi i / n)`. Reporting only.
    pub fn to_complex(&self) -> Complex64 {
        let w = 2.0 * std::f64::consts::PI / self.n as f64;
        self.c
            .iter()
            .enumerate()
            .map(|(i, c)| Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), w * i as f64))
            .sum()
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &CycInt) -> bool {
        match self.aligned(other) {
            Ok((a, b)) => a.c == b.c,
            Err(_) => false,
        }
    }
}

impl Eq for CycInt {}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*z")?,
                _ => write!(f, "{mag}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        // `{:#}` leaves out the root of unity
        if f.alternate() {
            return Ok(());
        }
        write!(f, " (z = zeta_{})", self.n)
    }
}

/// Coefficients serialize as JSON integers, or as decimal strings when
/// they do not fit in 64 bits.
pub(crate) fn big_to_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::from(v.to_string()),
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<serde_json::Value> = self.c.iter().map(big_to_json).collect();
        let mut st = s.serialize_struct("CycInt", 2)?;
        st.serialize_field("order", &self.n)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&CycInt> for &CycInt {
            type Output = CycInt;
            fn $m(self, rhs: &CycInt) -> CycInt {
                self.$checked(rhs).expect("incompatible cyclotomic orders")
            }
        }
        impl $tr<CycInt> for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: CycInt) -> CycInt {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycInt> for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: &CycInt) -> CycInt {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            n: self.n,
            c: self.c.into_iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z5(j: i64) -> CycInt {
        CycInt::zeta_pow(5, j)
    }

    fn int(n: u64, v: i64) -> CycInt {
        CycInt::from_int(n, v)
    }

    #[test]
    fn product_of_conjugate_pair() {
        let lhs = (int(5, 1) + z5(1)) * (int(5, 1) + z5(4));
        assert_eq!(lhs, int(5, 2) + z5(1) + z5(4));
    }

    #[test]
    fn sum_of_all_fifth_roots_vanishes() {
        let s = (0..5).map(z5).fold(CycInt::zero(5), |a, b| a + b);
        assert!(s.is_zero());
    }

    #[test]
    fn galois_examples() {
        let x = int(5, 4) + z5(2).scale(&2.into()) + z5(3).scale(&2.into());
        assert_eq!(x.galois_apply(1).unwrap(), x);
        assert_eq!(x.galois_apply(4).unwrap(), x);
        assert_eq!(z5(1).galois_apply(2).unwrap(), z5(2));
        assert_eq!(
            z5(1).galois_apply(5),
            Err(Error::BadAutomorphism { j: 0, n: 5 })
        );
    }

    #[test]
    fn complex_values() {
        assert_eq!(CycInt::zero(7).to_complex(), Complex64::new(0.0, 0.0));
        let v = (z5(1) + z5(4)).to_complex();
        assert!((v.re - 0.618034).abs() < 1e-6 && v.im.abs() < 1e-12);
        assert_eq!(int(9, -17).to_complex(), Complex64::new(-17.0, 0.0));
    }

    #[test]
    fn embedding_and_mismatch() {
        let a = CycInt::zeta_pow(3, 1);
        let b = CycInt::zeta_pow(6, 2);
        assert_eq!(a, b);
        assert_eq!((&a * &CycInt::zeta_pow(6, 1)), CycInt::zeta_pow(6, 3));
        assert_eq!(
            a.checked_add(&z5(1)),
            Err(Error::OrderMismatch(3, 5))
        );
        // rational integers embed everywhere
        assert_eq!(int(3, 4).checked_add(&z5(1)).unwrap(), int(5, 4) + z5(1));
    }

    #[test]
    fn exact_division_and_norm() {
        let a = int(5, 3) - z5(2);
        let b = int(5, 2) + z5(1) + z5(3).scale(&5.into());
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(z5(1).norm(), BigInt::one());
        // 1 - zeta_5 has norm 5 and does not divide 1
        let pi = int(5, 1) - z5(1);
        assert_eq!(pi.norm(), BigInt::from(5));
        assert_eq!(int(5, 1).div_exact(&pi), Err(Error::InexactDivision));
        assert_eq!(int(5, 5).div_exact(&pi).unwrap() * pi, int(5, 5));
    }

    #[test]
    fn display_format() {
        let x = int(5, 4) + z5(2).scale(&2.into()) - z5(3).scale(&2.into());
        assert_eq!(x.to_string(), "4 + 2*z^2 - 2*z^3 (z = zeta_5)");
        assert_eq!(CycInt::zero(3).to_string(), "0 (z = zeta_3)");
        assert_eq!(format!("{x:#}"), "4 + 2*z^2 - 2*z^3");
    }

    #[test]
    fn conjugating_automorphisms_find_the_map() {
        let x = int(5, 4) + z5(1).scale(&2.into()) + z5(4).scale(&2.into());
        let y = x.galois_apply(2).unwrap();
        assert_eq!(x.conjugating_automorphisms(&y), vec![2, 3]);
        assert!(x.conjugating_automorphisms(&int(5, 4)).is_empty());
    }

    #[test]
    fn restrict_inverts_embed() {
        let x = int(5, 4) + z5(2).scale(&2.into()) - z5(3).scale(&7.into());
        for n in [10u64, 15, 20, 30] {
            assert_eq!(x.embed(n).unwrap().restrict(5).unwrap().coeffs(), x.coeffs());
        }
        // zeta_10 = -zeta_5^3
        assert_eq!(CycInt::zeta_pow(10, 1).restrict(5).unwrap(), -z5(3));
        assert_eq!(CycInt::zeta_pow(12, 1).restrict(4), Err(Error::OrderMismatch(12, 4)));
        assert_eq!(int(12, -3).restrict(3).unwrap(), int(3, -3));
    }
}
