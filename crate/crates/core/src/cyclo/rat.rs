use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::int::{big_to_json, CycInt};
use crate::error::{Error, Result};

/// An element of `Q(zeta_n)` written as `numerator / denominator` with a
/// positive denominator coprime to the numerator's content.
#[derive(Clone, Debug)]
pub struct CycRat {
    num: CycInt,
    den: BigInt,
}

impl CycRat {
    pub fn new(num: CycInt, den: impl Into<BigInt>) -> Result<CycRat> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: CycInt, den: BigInt) -> CycRat {
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        };
        let g = num.content().gcd(&den);
        if g.is_one() || g.is_zero() {
            return CycRat { num, den };
        }
        CycRat {
            num: num.div_int(&g).expect("gcd divides content"),
            den: den / g,
        }
    }

    pub fn from_int(x: CycInt) -> CycRat {
        CycRat {
            num: x,
            den: BigInt::one(),
        }
    }

    pub fn zero(n: u64) -> CycRat {
        Self::from_int(CycInt::zero(n))
    }

    pub fn numer(&self) -> &CycInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn order(&self) -> u64 {
        self.num.order()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_cycint(&self) -> Option<CycInt> {
        self.is_integral().then(|| self.num.clone())
    }

    /// Multiply by the integer `k`.
    pub fn scale_int(&self, k: impl Into<BigInt>) -> CycRat {
        Self::reduced(self.num.scale(&k.into()), self.den.clone())
    }

    /// Divide by the nonzero integer `k`.
    pub fn div_int(&self, k: impl Into<BigInt>) -> Result<CycRat> {
        Self::new(self.num.clone(), &self.den * k.into())
    }

    pub fn embed(&self, m: u64) -> Result<CycRat> {
        Ok(CycRat {
            num: self.num.embed(m)?,
            den: self.den.clone(),
        })
    }

    /// See [`CycInt::restrict`].
    pub fn restrict(&self, m: u64) -> Result<CycRat> {
        CycRat::new(self.num.restrict(m)?, self.den.clone())
    }

    pub fn checked_add(&self, other: &CycRat) -> Result<CycRat> {
        let a = self.num.scale(&other.den);
        let b = other.num.scale(&self.den);
        Ok(Self::reduced(a.checked_add(&b)?, &self.den * &other.den))
    }

    pub fn checked_sub(&self, other: &CycRat) -> Result<CycRat> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &CycRat) -> Result<CycRat> {
        Ok(Self::reduced(
            self.num.checked_mul(&other.num)?,
            &self.den * &other.den,
        ))
    }

    pub fn inv(&self) -> Result<CycRat> {
        let (adj, norm) = self.num.inverse_parts()?;
        Ok(Self::reduced(adj.scale(&self.den), norm))
    }

    pub fn checked_div(&self, other: &CycRat) -> Result<CycRat> {
        self.checked_mul(&other.inv()?)
    }

    pub fn galois_apply(&self, j: i64) -> Result<CycRat> {
        Ok(CycRat {
            num: self.num.galois_apply(j)?,
            den: self.den.clone(),
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        self.num.to_complex() / self.den.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<CycInt> for CycRat {
    fn from(x: CycInt) -> CycRat {
        CycRat::from_int(x)
    }
}

impl PartialEq for CycRat {
    fn eq(&self, other: &CycRat) -> bool {
        self.den == other.den && self.num == other.num
    }
}

impl Eq for CycRat {}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({:#}) / {} (z = zeta_{})", self.num, self.den, self.num.order())
        }
    }
}

impl Serialize for CycRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<serde_json::Value> = self.num.coeffs().iter().map(big_to_json).collect();
        let mut st = s.serialize_struct("CycRat", 3)?;
        st.serialize_field("order", &self.num.order())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("denominator", &big_to_json(&self.den))?;
        st.end()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&CycRat> for &CycRat {
            type Output = CycRat;
            fn $m(self, rhs: &CycRat) -> CycRat {
                self.$checked(rhs).expect("incompatible cyclotomic orders")
            }
        }
        impl $tr<CycRat> for CycRat {
            type Output = CycRat;
            fn $m(self, rhs: CycRat) -> CycRat {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        CycRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        -&self
    }
}
