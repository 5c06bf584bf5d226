//! The family `y^l = t^e1 (1-t)^e2 (1-zt)^e3`, its point counts, and the
//! hyperelliptic and elliptic models attached to it.

mod elliptic;
mod models;

pub use elliptic::{
    elliptic_e1_e2, isogeny_phi, koike_curve, ono_curve, twisted_e2, EllipticCurve, Point,
};
pub use models::{
    count_hyperelliptic, even_degree_coefficients, even_degree_model, general_birational_model,
    split_models, HyperellipticModel, LinearInZ,
};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::arith::{gcd, is_prime};
use crate::ff::{FieldCtx, FieldElement};
use crate::kernel::histogram;

/// Largest field `F_{q^k}` the counters will enumerate.
pub const COUNT_BUDGET: u64 = 1 << 27;

/// One curve `y^l = t^e1 (1-t)^e2 (1-zt)^e3` over `F_q`, `z` in `F_q \ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveInstance {
    pub l: u64,
    pub exponents: (u64, u64, u64),
    pub q: u64,
    pub z: u64,
}

impl CurveInstance {
    pub fn new(l: u64, exponents: (u64, u64, u64), q: u64, z: u64) -> Result<CurveInstance> {
        let bad = |m: String| Err(Error::PreconditionViolated(m));
        if l < 2 {
            return bad(format!("l = {l} must be at least 2"));
        }
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if q % l != 1 {
            return bad(format!("q = {q} is not 1 mod {l}"));
        }
        let (e1, e2, e3) = exponents;
        if [e1, e2, e3].iter().any(|&e| e == 0 || e >= l) {
            return bad(format!("exponents {exponents:?} must lie in 1..{l}"));
        }
        if e1 + e2 != l {
            return bad(format!("exponents {exponents:?} need e1 + e2 = {l}"));
        }
        let z = z % q;
        if z == 0 || z == 1 {
            return bad(format!("z = {z} must avoid 0 and 1"));
        }
        Ok(CurveInstance {
            l,
            exponents,
            q,
            z,
        })
    }

    /// The curve attached to `(m, s)`: exponents `(l - s, s, m)`, which is
    /// `(m, s, m)` when `m + s = l`.
    pub fn from_ms(l: u64, m: u64, s: u64, q: u64, z: u64) -> Result<CurveInstance> {
        if s == 0 || s >= l {
            return Err(Error::PreconditionViolated(format!(
                "s = {s} must lie in 1..{l}"
            )));
        }
        Self::new(l, (l - s, s, m), q, z)
    }

    /// Genus of the smooth model, by Riemann-Hurwitz over the four branch
    /// points `0, 1, 1/z, infinity`.
    pub fn genus(&self) -> Result<u64> {
        let (e1, e2, e3) = self.exponents;
        genus_for_exponents(self.l, [e1, e2, e3])
    }

    pub fn field(&self, k: u32) -> Result<Arc<FieldCtx>> {
        let size = (self.q as u128).checked_pow(k).unwrap_or(u128::MAX);
        if size > COUNT_BUDGET as u128 {
            return Err(Error::SizeBudgetExceeded {
                what: "counting field",
                size,
                budget: COUNT_BUDGET as u128,
            });
        }
        FieldCtx::shared(self.q, k)
    }

    pub fn z_in(&self, ctx: &FieldCtx) -> FieldElement {
        ctx.from_int(self.z as i64)
    }
}

pub(crate) fn genus_for_exponents(l: u64, e: [u64; 3]) -> Result<u64> {
    let inf = (l - (e[0] + e[1] + e[2]) % l) % l;
    if gcd(gcd(gcd(l, e[0]), e[1]), e[2]) != 1 {
        return Err(Error::PreconditionViolated(format!(
            "exponents {e:?} define a reducible curve for l = {l}"
        )));
    }
    // 2g - 2 = -2l + sum over branch points of (l - #points above it)
    let ram: u64 = [e[0], e[1], e[2], inf].iter().map(|&x| l - gcd(x, l)).sum();
    Ok((ram + 2 - 2 * l) / 2)
}

/// Genus of the `(m, s)` family with `m + s = l`.
pub fn genus(l: u64) -> Result<u64> {
    if l < 2 {
        return Err(Error::PreconditionViolated(format!("l = {l} < 2")));
    }
    genus_for_exponents(l, [1, l - 1, 1])
}

/// `N_k`: affine solutions of the plane model over `F_{q^k}` plus one point
/// at infinity.
pub fn count_points_formula_model(c: &CurveInstance, k: u32) -> Result<u64> {
    let ctx = c.field(k)?;
    let (e1, e2, e3) = c.exponents;
    let h = histogram(&ctx, c.z_in(&ctx), c.l, [e1, e2, e3]);
    // infinity, t = 0, the other zeros of the right-hand side, and residues
    Ok(2 + h.degenerate as u64 + c.l * h.bins[0] as u64)
}

/// `N_1, ..., N_kmax`.
pub fn count_points_range(c: &CurveInstance, kmax: u32) -> Result<Vec<u64>> {
    (1..=kmax).map(|k| count_points_formula_model(c, k)).collect()
}
