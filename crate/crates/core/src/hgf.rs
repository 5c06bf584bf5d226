//! Jacobi sums, Greene binomials and hypergeometric functions over `F_q`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::cyclo::{CycInt, CycRat};
use crate::error::{Error, Result};
use crate::ff::arith::lcm;
use crate::ff::{char_of_order_l_via_norm, FieldCtx, FieldElement, MultChar};
use crate::kernel::histogram;

/// Largest `q - 1` for which sums over the full character group are formed.
pub const CYCLOTOMIC_BUDGET: u64 = 1 << 10;

fn check_chars(ctx: &FieldCtx, chars: &[&MultChar]) -> Result<()> {
    if chars.iter().any(|c| c.field_order() != ctx.order()) {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// Exponent of `chi` as a power of `zeta_n`, for `order(chi) | n`.
fn exp_in(chi: &MultChar, n: u64) -> u64 {
    chi.exponent() * (n / chi.order())
}

fn unit_value(chi: &MultChar, v: u64) -> CycInt {
    CycInt::zeta_pow(chi.order(), v as i64)
}

/// `chi(x)` as a cyclotomic integer, zero at `x = 0`.
pub fn char_value(ctx: &FieldCtx, chi: &MultChar, x: FieldElement) -> CycInt {
    match chi.eval(ctx, x) {
        Some(v) => unit_value(chi, v),
        None => CycInt::zero(chi.order()),
    }
}

/// `J(A, B) = sum_x A(x) B(1 - x)`.
pub fn jacobi_sum(ctx: &FieldCtx, a: &MultChar, b: &MultChar) -> Result<CycInt> {
    check_chars(ctx, &[a, b])?;
    let n = lcm(a.order(), b.order());
    let h = histogram(ctx, ctx.zero(), n, [exp_in(a, n), exp_in(b, n), 0]);
    Ok(CycInt::from_exponent_counts(n, &h.bins))
}

/// Greene's binomial `(A over B) = B(-1)/q * J(A, conj B)`.
pub fn greene_binomial(ctx: &FieldCtx, a: &MultChar, b: &MultChar) -> Result<CycRat> {
    let j = jacobi_sum(ctx, a, &b.conj())?;
    let j = j.scale(&BigInt::from(b.sign_at_minus_one(ctx)));
    CycRat::new(j, ctx.order())
}

/// `2F1(A, B; C | x)` from the single-sum definition
/// `eps(x) BC(-1)/q * sum_y B(y) conj(B)C(1-y) conj(A)(1-xy)`.
pub fn hgf2f1_defn35(
    ctx: &FieldCtx,
    a: &MultChar,
    b: &MultChar,
    c: &MultChar,
    x: FieldElement,
) -> Result<CycRat> {
    check_chars(ctx, &[a, b, c])?;
    let n = lcm(lcm(a.order(), b.order()), c.order());
    if x.is_zero() {
        return Ok(CycRat::zero(n));
    }
    let bc = b.conj().mul(c)?;
    let w = [exp_in(b, n), exp_in(&bc, n), exp_in(&a.conj(), n)];
    let h = histogram(ctx, x, n, w);
    let sign = b.mul(c)?.sign_at_minus_one(ctx);
    let sum = CycInt::from_exponent_counts(n, &h.bins).scale(&BigInt::from(sign));
    CycRat::new(sum, ctx.order())
}

/// `n+1 F n (A_0, ..., A_n; B_1, ..., B_n | x)` over a field.
#[derive(Clone, Debug)]
pub struct HgfSpec<'a> {
    pub ctx: &'a FieldCtx,
    pub upper: Vec<MultChar>,
    pub lower: Vec<MultChar>,
    pub x: FieldElement,
}

impl<'a> HgfSpec<'a> {
    pub fn new(
        ctx: &'a FieldCtx,
        upper: Vec<MultChar>,
        lower: Vec<MultChar>,
        x: FieldElement,
    ) -> Result<HgfSpec<'a>> {
        if lower.is_empty() || upper.len() != lower.len() + 1 {
            return Err(Error::PreconditionViolated(format!(
                "need n+1 upper and n >= 1 lower characters, got {} and {}",
                upper.len(),
                lower.len()
            )));
        }
        let all: Vec<&MultChar> = upper.iter().chain(&lower).collect();
        check_chars(ctx, &all)?;
        Ok(HgfSpec {
            ctx,
            upper,
            lower,
            x,
        })
    }
}

/// Group-ring Jacobi sums `J(omega^a, omega^b)` over `Z[C_{q-1}]`.
struct JacobiTable {
    n: u64,
    pairs: Vec<(u64, u64)>,
}

impl JacobiTable {
    fn new(ctx: &FieldCtx) -> JacobiTable {
        let one = ctx.one();
        let pairs = ctx
            .units()
            .filter(|&x| x != one)
            .map(|x| {
                let lx = ctx.dlog(x).unwrap();
                let l1 = ctx.dlog(ctx.sub(one, x)).unwrap();
                (lx, l1)
            })
            .collect();
        JacobiTable {
            n: ctx.unit_order(),
            pairs,
        }
    }

    fn bins(&self, a: i64, b: i64) -> Vec<i128> {
        let n = self.n as i64;
        let (a, b) = (a.rem_euclid(n) as u64, b.rem_euclid(n) as u64);
        let mut out = vec![0i128; self.n as usize];
        for &(lx, l1) in &self.pairs {
            out[((a * lx + b * l1) % self.n) as usize] += 1;
        }
        out
    }
}

fn convolve(a: &[i128], b: &[i128]) -> Vec<i128> {
    let n = a.len();
    let mut out = vec![0i128; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[(i + j) % n] += x * y;
            }
        }
    }
    out
}

/// `q/(q-1) sum_chi (A_0 chi over chi) prod_j (A_j chi over B_j chi) chi(x)`,
/// summed over all `q - 1` characters in `Q(zeta_{q-1})` and returned in the
/// cyclotomic field generated by the parameter characters.
pub fn hgf_general(spec: &HgfSpec) -> Result<CycRat> {
    let ctx = spec.ctx;
    let n = ctx.unit_order();
    if n > CYCLOTOMIC_BUDGET {
        return Err(Error::SizeBudgetExceeded {
            what: "cyclotomic order",
            size: n as u128,
            budget: CYCLOTOMIC_BUDGET as u128,
        });
    }
    let field = spec
        .upper
        .iter()
        .chain(&spec.lower)
        .fold(1, |acc, c| lcm(acc, c.order()));
    let Some(lx) = ctx.dlog(spec.x) else {
        return Ok(CycRat::zero(field));
    };
    let table = JacobiTable::new(ctx);
    let ni = n as i64;
    let om = |c: &MultChar| c.omega_exponent() as i64;
    let mut total = vec![0i128; n as usize];
    for t in 0..ni {
        // chi = omega^t, chi(-1) = (-1)^t
        let mut sign = if t % 2 == 0 { 1 } else { -1 };
        let mut acc = vec![0i128; n as usize];
        acc[((t * lx as i64) % ni) as usize] = 1;
        acc = convolve(&acc, &table.bins(om(&spec.upper[0]) + t, -t));
        for (a, b) in spec.upper[1..].iter().zip(&spec.lower) {
            let bt = om(b) + t;
            if bt.rem_euclid(2) == 1 {
                sign = -sign;
            }
            acc = convolve(&acc, &table.bins(om(a) + t, -bt));
        }
        for (s, v) in total.iter_mut().zip(acc) {
            *s += sign * v;
        }
    }
    let coeffs = total.into_iter().map(BigInt::from).collect();
    let den = BigInt::from(n) * BigInt::from(ctx.order()).pow(spec.lower.len() as u32);
    CycRat::new(CycInt::new(n, coeffs), den)?.restrict(field)
}

/// `2F1(A, B; C | x)` through the character-sum expansion over all characters.
pub fn hgf2f1_thm36(
    ctx: &FieldCtx,
    a: &MultChar,
    b: &MultChar,
    c: &MultChar,
    x: FieldElement,
) -> Result<CycRat> {
    hgf_general(&HgfSpec::new(ctx, vec![*a, *b], vec![*c], x)?)
}

/// Both sides of
/// `2F1(A,B;C|x) = C(-1) C conj(AB)(1-x) 2F1(C conj A, C conj B; C | x)
///                 + A(-1) (B over conj(A) C) delta(1-x)`.
pub fn transform_thm44(
    ctx: &FieldCtx,
    a: &MultChar,
    b: &MultChar,
    c: &MultChar,
    x: FieldElement,
) -> Result<(CycRat, CycRat)> {
    let lhs = hgf2f1_defn35(ctx, a, b, c, x)?;
    let ca = c.mul(&a.conj())?;
    let cb = c.mul(&b.conj())?;
    let inner = hgf2f1_defn35(ctx, &ca, &cb, c, x)?;
    let one_minus_x = ctx.sub(ctx.one(), x);
    let weight = ca.mul(&b.conj())?;
    let factor = char_value(ctx, &weight, one_minus_x).scale(&c.sign_at_minus_one(ctx).into());
    let mut rhs = CycRat::from_int(factor).checked_mul(&inner)?;
    if one_minus_x.is_zero() {
        let binom = greene_binomial(ctx, b, &a.conj().mul(c)?)?;
        let delta = binom.scale_int(a.sign_at_minus_one(ctx));
        rhs = rhs.checked_add(&delta)?;
    }
    Ok((lhs, rhs))
}

/// The order-`l` character used for `F_{i, q^k}`: the canonical `eta` with
/// `eta(g) = zeta_l` on a prime field, and `eta o N` on an extension.
pub fn order_l_character(ctx: &FieldCtx, l: u64) -> Result<MultChar> {
    if ctx.k() == 1 {
        return MultChar::canonical(ctx, l);
    }
    let base = FieldCtx::shared(ctx.p(), 1)?;
    let eta = MultChar::canonical(&base, l)?;
    char_of_order_l_via_norm(&base, &eta, ctx)
}

/// `F_{i, q^k}(z)` for one curve of the family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FValue {
    pub value: CycInt,
    pub i: u64,
    pub field_order: u64,
    pub l: u64,
    pub exponents: (u64, u64, u64),
    pub z: u64,
}

/// `q^k * eta^(i e2)(-1) * 2F1(eta^(i(l - e3)), eta^(i e1); eps | z)`.
pub fn f_value(
    ctx: &FieldCtx,
    eta: &MultChar,
    exponents: (u64, u64, u64),
    z: FieldElement,
    i: u64,
) -> Result<FValue> {
    let l = eta.order();
    if z.is_zero() {
        return Err(Error::PreconditionViolated("z must be nonzero".into()));
    }
    if i == 0 || i >= l {
        return Err(Error::PreconditionViolated(format!(
            "index {i} outside 1..{}",
            l - 1
        )));
    }
    let (e1, e2, e3) = exponents;
    let i = i as i64;
    let a = eta.pow(i * (l as i64 - (e3 % l) as i64));
    let b = eta.pow(i * e1 as i64);
    let eps = MultChar::trivial(ctx);
    let f = hgf2f1_defn35(ctx, &a, &b, &eps, z)?;
    let sign = eta.pow(i * e2 as i64).sign_at_minus_one(ctx);
    let value = f
        .scale_int(sign * ctx.order() as i64)
        .to_cycint()
        .ok_or(Error::NonIntegralSum)?
        .embed(l)?;
    Ok(FValue {
        value,
        i: i as u64,
        field_order: ctx.order(),
        l,
        exponents,
        z: z.packed(),
    })
}

/// All `F_1, ..., F_{l-1}` for one instance.
pub fn f_values(
    ctx: &FieldCtx,
    eta: &MultChar,
    exponents: (u64, u64, u64),
    z: FieldElement,
) -> Result<Vec<CycInt>> {
    (1..eta.order())
        .map(|i| f_value(ctx, eta, exponents, z, i).map(|f| f.value))
        .collect()
}

/// A unit `j` with `sigma_j(got[k]) = want[k]` for every `k`, if one exists.
pub fn uniform_conjugation(got: &[CycInt], want: &[CycInt]) -> Option<u64> {
    let mut candidates: Option<Vec<u64>> = None;
    for (g, w) in got.iter().zip(want) {
        let js = g.conjugating_automorphisms(w);
        candidates = Some(match candidates {
            None => js,
            Some(prev) => prev.into_iter().filter(|j| js.contains(j)).collect(),
        });
    }
    candidates.and_then(|c| c.first().copied())
}
