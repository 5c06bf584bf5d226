use serde::{Deserialize, Serialize};

use super::arith::{gcd, lcm};
use super::field::{FieldCtx, FieldElement};
use crate::error::{Error, Result};

/// Multiplicative character `chi` with `chi(g) = zeta_order^exponent` on the
/// context generator `g`, extended by `chi(0) = 0`.
///
/// The pair is kept normalized: `gcd(exponent, order) = 1`, so `order` is the
/// exact order of the character. The trivial character is `(1, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultChar {
    field_order: u64,
    order: u64,
    exponent: u64,
}

impl MultChar {
    pub fn new(ctx: &FieldCtx, n: u64, e: u64) -> Result<MultChar> {
        let group = ctx.unit_order();
        if n == 0 || !group.is_multiple_of(n) {
            return Err(Error::BadOrder { n, group_order: group });
        }
        Ok(Self::normalized(ctx.order(), n, e))
    }

    fn normalized(field_order: u64, n: u64, e: u64) -> MultChar {
        let e = e % n;
        if e == 0 {
            return MultChar {
                field_order,
                order: 1,
                exponent: 0,
            };
        }
        let d = gcd(e, n);
        MultChar {
            field_order,
            order: n / d,
            exponent: e / d,
        }
    }

    pub fn trivial(ctx: &FieldCtx) -> MultChar {
        Self::normalized(ctx.order(), 1, 0)
    }

    /// Character of order `l` sending the generator to `zeta_l`.
    pub fn canonical(ctx: &FieldCtx, l: u64) -> Result<MultChar> {
        Self::new(ctx, l, 1)
    }

    /// The quadratic character (odd characteristic only).
    pub fn quadratic(ctx: &FieldCtx) -> Result<MultChar> {
        Self::new(ctx, 2, 1)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Cyclotomic order the values live in; equal to the character order.
    pub fn value_order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn field_order(&self) -> u64 {
        self.field_order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Exponent of this character against the order-`(q-1)` character `omega`
    /// with `omega(g) = zeta_{q-1}`.
    pub fn omega_exponent(&self) -> u64 {
        let group = self.field_order - 1;
        self.exponent * (group / self.order)
    }

    pub fn from_omega_exponent(ctx: &FieldCtx, a: u64) -> MultChar {
        let group = ctx.unit_order();
        Self::normalized(ctx.order(), group, a % group)
    }

    fn check_same(&self, other: &MultChar) -> Result<()> {
        if self.field_order != other.field_order {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &MultChar) -> Result<MultChar> {
        self.check_same(other)?;
        let n = lcm(self.order, other.order);
        let e = self.exponent * (n / self.order) + other.exponent * (n / other.order);
        Ok(Self::normalized(self.field_order, n, e))
    }

    pub fn conj(&self) -> MultChar {
        Self::normalized(self.field_order, self.order, self.order - self.exponent)
    }

    pub fn pow(&self, j: i64) -> MultChar {
        let e = (self.exponent as i128 * j as i128).rem_euclid(self.order as i128) as u64;
        Self::normalized(self.field_order, self.order, e)
    }

    /// `chi(x)` as an exponent of `zeta_order`, or `None` for `chi(0) = 0`.
    pub fn eval(&self, ctx: &FieldCtx, x: FieldElement) -> Option<u64> {
        debug_assert_eq!(ctx.order(), self.field_order);
        if x.is_zero() {
            return None;
        }
        if self.order == 1 {
            return Some(0);
        }
        let j = ctx.dlog_mod(x, self.order)?;
        Some(j * self.exponent % self.order)
    }

    /// `chi(x)` given `j = dlog(x)`.
    #[inline]
    pub fn eval_log(&self, j: u64) -> u64 {
        (j % self.order) * self.exponent % self.order
    }

    /// `chi(-1)`, which is always `+1` or `-1`.
    pub fn sign_at_minus_one(&self, ctx: &FieldCtx) -> i64 {
        let v = self.eval_log(ctx.log_minus_one());
        if v == 0 {
            1
        } else {
            debug_assert_eq!(2 * v, self.order);
            -1
        }
    }

    /// Same character viewed with values in `zeta_n`, `order | n`.
    pub fn lift_index(&self, value: u64, n: u64) -> u64 {
        debug_assert_eq!(n % self.order, 0);
        value * (n / self.order)
    }
}

/// The character `eta o N` on `ext`, where `N` is the norm down to the prime
/// field `base` and `eta` is a character of `base`.
pub fn char_of_order_l_via_norm(
    base: &FieldCtx,
    eta: &MultChar,
    ext: &FieldCtx,
) -> Result<MultChar> {
    if base.k() != 1 || base.p() != ext.p() || eta.field_order() != base.order() {
        return Err(Error::FieldMismatch);
    }
    let norm_g = ext.norm_to_base(ext.generator());
    let residue = ext
        .to_prime(norm_g)
        .expect("norm of a unit lies in the prime field");
    let d = base
        .dlog(base.from_int(residue as i64))
        .expect("norm of a unit is nonzero");
    let chi = MultChar::new(ext, eta.order(), eta.exponent() * d)?;
    if chi.order() != eta.order() {
        return Err(Error::OrderCollapse {
            expected: eta.order(),
            got: chi.order(),
        });
    }
    Ok(chi)
}
