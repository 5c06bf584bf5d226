use std::fmt;

use num_bigint::BigInt;

use super::int::CycInt;
use super::rat::CycRat;
use crate::error::{Error, Result};

/// Polynomial in `T` over `Z[zeta_n]`, coefficients low-to-high, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycPoly {
    n: u64,
    c: Vec<CycInt>,
}

fn trim(mut c: Vec<CycInt>) -> Vec<CycInt> {
    while c.last().is_some_and(CycInt::is_zero) {
        c.pop();
    }
    c
}

impl CycPoly {
    pub fn new(n: u64, coeffs: Vec<CycInt>) -> Result<CycPoly> {
        let c = coeffs
            .into_iter()
            .map(|x| x.embed(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycPoly { n, c: trim(c) })
    }

    pub fn from_ints(n: u64, coeffs: &[i128]) -> CycPoly {
        let c = coeffs.iter().map(|&v| CycInt::from_int(n, v)).collect();
        CycPoly { n, c: trim(c) }
    }

    pub fn one(n: u64) -> CycPoly {
        Self::from_ints(n, &[1])
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[CycInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Coefficients as rational integers, if every one of them is.
    pub fn as_integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.c.iter().map(CycInt::as_integer).collect()
    }

    pub fn add(&self, other: &CycPoly) -> Result<CycPoly> {
        let len = self.c.len().max(other.c.len());
        let zero = CycInt::zero(self.n);
        let c = (0..len)
            .map(|i| {
                let a = self.c.get(i).unwrap_or(&zero);
                let b = other.c.get(i).unwrap_or(&zero);
                a.checked_add(b)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.n.max(other.n), c)
    }

    pub fn mul(&self, other: &CycPoly) -> Result<CycPoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(CycPoly {
                n: self.n,
                c: Vec::new(),
            });
        }
        let mut out: Vec<CycInt> = Vec::with_capacity(self.c.len() + other.c.len() - 1);
        for _ in 0..self.c.len() + other.c.len() - 1 {
            out.push(CycInt::zero(self.n));
        }
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in other.c.iter().enumerate() {
                out[i + j] = out[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        let n = out[0].order();
        Self::new(n, out)
    }

    /// `self / other`, required to be exact with a quotient in `Z[zeta_n][T]`.
    pub fn divide_exact(&self, other: &CycPoly) -> Result<CycPoly> {
        let db = other.degree().ok_or(Error::InexactDivision)?;
        let Some(da) = self.degree() else {
            return Ok(self.clone());
        };
        if da < db {
            return Err(Error::InexactDivision);
        }
        let lead_inv = CycRat::from_int(other.c[db].clone()).inv()?;
        let mut rem: Vec<CycRat> = self.c.iter().cloned().map(CycRat::from_int).collect();
        let mut quot: Vec<CycRat> = vec![CycRat::zero(self.n); da - db + 1];
        for i in (0..=da - db).rev() {
            let t = rem[i + db].checked_mul(&lead_inv)?;
            if t.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                let sub = t.checked_mul(&CycRat::from_int(b.clone()))?;
                rem[i + j] = rem[i + j].checked_sub(&sub)?;
            }
            quot[i] = t;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return Err(Error::InexactDivision);
        }
        let c = quot
            .into_iter()
            .map(|x| x.to_cycint().ok_or(Error::InexactDivision))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.n.max(other.n), c)
    }

    pub fn galois_apply(&self, j: i64) -> Result<CycPoly> {
        let c = self
            .c
            .iter()
            .map(|x| x.galois_apply(j))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycPoly { n: self.n, c })
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| {
                let body = match x.as_integer() {
                    Some(v) => v.to_string(),
                    None => format!("({})", x),
                };
                match i {
                    0 => body,
                    1 => format!("{body}*T"),
                    _ => format!("{body}*T^{i}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_product_and_division() {
        let z = CycInt::zeta_pow(5, 1);
        let f = CycInt::from_int(5, 4) + z.scale(&2.into());
        let quad = CycPoly::new(5, vec![CycInt::one(5), f.clone(), CycInt::from_int(5, 11)]).unwrap();
        let other = CycPoly::new(5, vec![CycInt::one(5), -f, CycInt::from_int(5, 11)]).unwrap();
        let prod = quad.mul(&other).unwrap();
        assert_eq!(prod.divide_exact(&quad).unwrap(), other);
        assert_eq!(prod.divide_exact(&other).unwrap(), quad);
        let off = CycPoly::from_ints(5, &[1, 3, 11]);
        assert_eq!(prod.divide_exact(&off), Err(Error::InexactDivision));
    }

    #[test]
    fn integer_coefficients_recovered() {
        let a = CycPoly::from_ints(1, &[1, 3, 11]);
        let sq = a.mul(&a).unwrap();
        let ints: Vec<i64> = sq
            .as_integer_coeffs()
            .unwrap()
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect();
        assert_eq!(ints, vec![1, 6, 31, 66, 121]);
    }
}
