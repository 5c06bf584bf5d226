use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::arith::{self, inv_mod, mul_mod, pow_mod};
use super::poly;
use crate::error::{Error, Result};

/// Element of `F_{p^k}`, stored as the packed integer `sum c_i p^i` of its
/// coefficient vector over the polynomial basis. Arithmetic goes through the
/// owning [`FieldCtx`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    pub fn from_packed(v: u64) -> Self {
        FieldElement(v)
    }

    pub fn packed(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldConfig {
    /// Largest field order for which log/antilog/Zech tables are built.
    pub table_budget: u64,
    /// Largest field order that may be constructed at all.
    pub max_order: u64,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig {
            table_budget: 1 << 27,
            max_order: 1 << 32,
        }
    }
}

/// Sentinel for "logarithm of zero" in the tables.
pub const NO_LOG: u32 = u32::MAX;

/// Discrete-log machinery relative to the context generator `g`.
pub struct Tables {
    /// `exp[j] = g^j` (packed), `0 <= j < q - 1`.
    pub exp: Vec<u32>,
    /// `log[x] = j` with `g^j = x`; `NO_LOG` at zero.
    pub log: Vec<u32>,
    /// Zech logarithms: `zech[m] = log(1 + g^m)`, `NO_LOG` where `g^m = -1`.
    pub zech: Vec<u32>,
}

/// A finite field `F_p` or `F_{p^k} = F_p[x]/(f)`.
pub struct FieldCtx {
    p: u64,
    k: u32,
    order: u64,
    modulus: Vec<u64>,
    powers: Vec<u64>,
    generator: FieldElement,
    unit_factors: Vec<u64>,
    table_budget: u64,
    tables: OnceLock<Option<Tables>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

pub fn make_prime_field(p: u64) -> Result<FieldCtx> {
    make_extension(p, 1)
}

pub fn make_extension(p: u64, k: u32) -> Result<FieldCtx> {
    FieldCtx::with_config(p, k, &FieldConfig::default())
}

type Registry = Mutex<HashMap<(u64, u32), Arc<FieldCtx>>>;

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FieldCtx {
    pub fn with_config(p: u64, k: u32, config: &FieldConfig) -> Result<FieldCtx> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::OutOfRange("extension degree must be at least 1".into()));
        }
        let order = (p as u128).pow(k);
        if order > config.max_order as u128 {
            return Err(Error::SizeBudgetExceeded {
                what: "field order",
                size: order,
                budget: config.max_order as u128,
            });
        }
        let order = order as u64;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            poly::smallest_irreducible(p, k as usize)
        };
        let powers = (0..k).map(|i| p.pow(i)).collect();
        let mut ctx = FieldCtx {
            p,
            k,
            order,
            modulus,
            powers,
            generator: FieldElement(1),
            unit_factors: arith::prime_factors(order - 1),
            table_budget: config.table_budget,
            tables: OnceLock::new(),
        };
        ctx.generator = ctx.find_generator();
        Ok(ctx)
    }

    /// Process-wide shared context with the default configuration.
    pub fn shared(p: u64, k: u32) -> Result<Arc<FieldCtx>> {
        if let Some(ctx) = registry().lock().unwrap().get(&(p, k)) {
            return Ok(Arc::clone(ctx));
        }
        let ctx = Arc::new(make_extension(p, k)?);
        let mut reg = registry().lock().unwrap();
        Ok(Arc::clone(reg.entry((p, k)).or_insert(ctx)))
    }

    fn find_generator(&self) -> FieldElement {
        if self.order == 2 {
            return self.one();
        }
        (1..self.order)
            .map(FieldElement)
            .find(|&x| self.has_full_order(x))
            .expect("multiplicative group is cyclic")
    }

    fn has_full_order(&self, x: FieldElement) -> bool {
        let n = self.order - 1;
        self.unit_factors
            .iter()
            .all(|&r| self.pow_raw(x, n / r) != self.one())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn unit_order(&self) -> u64 {
        self.order - 1
    }

    /// Monic modulus, coefficients low-to-high (`x` itself for prime fields).
    pub fn modulus_poly(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn same_field(&self, other: &FieldCtx) -> bool {
        self.p == other.p && self.k == other.k
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.k as usize {
            return Err(Error::OutOfRange(format!(
                "{} coefficients for a degree-{} extension",
                coeffs.len(),
                self.k
            )));
        }
        Ok(FieldElement(
            coeffs
                .iter()
                .zip(&self.powers)
                .map(|(&c, &pw)| (c % self.p) * pw)
                .sum(),
        ))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        let mut v = x.0;
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// The residue of `x` if it lies in the prime subfield.
    pub fn to_prime(&self, x: FieldElement) -> Option<u64> {
        (x.0 < self.p).then_some(x.0)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn units(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.order).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0);
        for &pw in &self.powers {
            out += ((x % self.p + y % self.p) % self.p) * pw;
            x /= self.p;
            y /= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        let (mut x, mut out) = (a.0, 0);
        for &pw in &self.powers {
            out += ((self.p - x % self.p) % self.p) * pw;
            x /= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    /// `c * x` for `c` in the prime subfield.
    pub fn scale(&self, c: u64, x: FieldElement) -> FieldElement {
        let c = c % self.p;
        if self.k == 1 {
            return FieldElement(mul_mod(c, x.0, self.p));
        }
        let (mut v, mut out) = (x.0, 0);
        for &pw in &self.powers {
            out += mul_mod(c, v % self.p, self.p) * pw;
            v /= self.p;
        }
        FieldElement(out)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        if self.k == 1 {
            return FieldElement(mul_mod(a.0, b.0, self.p));
        }
        match self.tables() {
            Some(t) => {
                let n = self.order - 1;
                let j = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % n;
                FieldElement(t.exp[j as usize] as u64)
            }
            None => self.mul_raw(a, b),
        }
    }

    fn mul_raw(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement(mul_mod(a.0, b.0, self.p));
        }
        let prod = poly::mul(&self.coeffs(a), &self.coeffs(b), self.p);
        let r = poly::rem(&prod, &self.modulus, self.p);
        self.from_coeffs(&r).expect("reduced below modulus degree")
    }

    fn pow_raw(&self, mut base: FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn pow(&self, base: FieldElement, exp: u64) -> FieldElement {
        if base.0 == 0 {
            return if exp == 0 { self.one() } else { self.zero() };
        }
        if self.k == 1 {
            return FieldElement(pow_mod(base.0, exp, self.p));
        }
        if let Some(t) = self.tables() {
            let n = self.order - 1;
            let l = t.log[base.0 as usize] as u128;
            let j = (l * (exp as u128 % n as u128)) % n as u128;
            return FieldElement(t.exp[j as usize] as u64);
        }
        self.pow_raw(base, exp)
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        if self.k == 1 {
            return Some(FieldElement(inv_mod(a.0, self.p)));
        }
        Some(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Log/antilog/Zech tables, built on first use when the field order fits
    /// the table budget.
    pub fn tables(&self) -> Option<&Tables> {
        self.tables
            .get_or_init(|| (self.order <= self.table_budget).then(|| self.build_tables()))
            .as_ref()
    }

    fn build_tables(&self) -> Tables {
        let n = (self.order - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![NO_LOG; self.order as usize];
        let mut x = self.one();
        for j in 0..n {
            exp.push(x.0 as u32);
            log[x.0 as usize] = j as u32;
            x = self.mul_raw(x, self.generator);
        }
        debug_assert_eq!(x, self.one());
        let one = self.one();
        let zech = exp
            .iter()
            .map(|&e| log[self.add(FieldElement(e as u64), one).0 as usize])
            .collect();
        Tables { exp, log, zech }
    }

    /// Index `j` in `[0, q-2]` with `generator^j = x`; `None` for zero.
    pub fn dlog(&self, x: FieldElement) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        match self.tables() {
            Some(t) => Some(t.log[x.0 as usize] as u64),
            None => self.dlog_mod(x, self.order - 1),
        }
    }

    /// `dlog(x) mod n` for `n | q - 1`, computed by exponentiation into the
    /// order-`n` subgroup; no table required.
    pub fn dlog_mod(&self, x: FieldElement, n: u64) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        let big = self.order - 1;
        debug_assert_eq!(big % n, 0);
        if let Some(t) = self.tables() {
            return Some(t.log[x.0 as usize] as u64 % n);
        }
        let h = self.pow(x, big / n);
        let gamma = self.pow(self.generator, big / n);
        let mut acc = self.one();
        for j in 0..n {
            if acc == h {
                return Some(j);
            }
            acc = self.mul(acc, gamma);
        }
        unreachable!("element outside the cyclic unit group")
    }

    /// Logarithm of `-1`.
    pub fn log_minus_one(&self) -> u64 {
        if self.p == 2 {
            0
        } else {
            (self.order - 1) / 2
        }
    }

    /// Number of solutions of `x^n = a`.
    pub fn nth_power_solution_count(&self, a: FieldElement, n: u64) -> Result<u64> {
        let group = self.order - 1;
        if n == 0 || !group.is_multiple_of(n) {
            return Err(Error::BadDivisor { n, group_order: group });
        }
        if a.0 == 0 {
            return Ok(1);
        }
        let residue = match self.tables() {
            Some(t) => (t.log[a.0 as usize] as u64).is_multiple_of(n),
            None => self.pow(a, group / n) == self.one(),
        };
        Ok(if residue { n } else { 0 })
    }

    /// Norm to the prime subfield, `a^((q^k - 1)/(q - 1))`, returned as an
    /// element of this context lying in `F_p`.
    pub fn norm_to_base(&self, a: FieldElement) -> FieldElement {
        if a.0 == 0 {
            return self.zero();
        }
        let e = (self.order - 1) / (self.p - 1);
        self.pow(a, e)
    }

    pub fn is_square(&self, a: FieldElement) -> bool {
        if a.0 == 0 || self.p == 2 {
            return true;
        }
        match self.tables() {
            Some(t) => t.log[a.0 as usize] % 2 == 0,
            None => self.pow(a, (self.order - 1) / 2) == self.one(),
        }
    }

    /// Horner evaluation of a polynomial with prime-field coefficients
    /// (low-to-high) at `x`.
    pub fn eval_prime_poly(&self, coeffs: &[u64], x: FieldElement) -> FieldElement {
        coeffs.iter().rev().fold(self.zero(), |acc, &c| {
            self.add(self.mul(acc, x), FieldElement(c % self.p))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_of(ctx: &FieldCtx, x: FieldElement) -> u64 {
        let mut acc = x;
        let mut n = 1;
        while acc != ctx.one() {
            acc = ctx.mul(acc, x);
            n += 1;
        }
        n
    }

    #[test]
    fn prime_field_generators() {
        assert_eq!(make_prime_field(11).unwrap().generator(), FieldElement(2));
        assert_eq!(make_prime_field(7).unwrap().generator(), FieldElement(3));
        assert_eq!(make_prime_field(4).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn extension_generators_have_full_order() {
        let f9 = make_extension(3, 2).unwrap();
        assert_eq!(f9.order(), 9);
        assert_eq!(order_of(&f9, f9.generator()), 8);
        let f121 = make_extension(11, 2).unwrap();
        assert_eq!(order_of(&f121, f121.generator()), 120);
    }

    #[test]
    fn extension_of_degree_one_is_prime_field() {
        let a = make_extension(11, 1).unwrap();
        let b = make_prime_field(11).unwrap();
        assert_eq!(a.generator(), b.generator());
        assert_eq!(a.order(), b.order());
    }

    #[test]
    fn fifth_roots_in_f121() {
        let f = make_extension(11, 2).unwrap();
        for a in 1..11i64 {
            let a_base = arith::pow_mod(a as u64, 2, 11);
            let a = f.from_int(a);
            let roots = f.elements().filter(|&x| f.pow(x, 5) == a).count();
            // fifth powers of F_11 (a^2 = 1) keep exactly five roots upstairs
            if a_base == 1 {
                assert_eq!(roots, 5);
            }
            assert_eq!(f.nth_power_solution_count(a, 5).unwrap() as usize, roots);
        }
    }

    #[test]
    fn table_and_raw_arithmetic_agree() {
        let f = make_extension(5, 3).unwrap();
        let nt = FieldCtx::with_config(
            5,
            3,
            &FieldConfig {
                table_budget: 0,
                ..FieldConfig::default()
            },
        )
        .unwrap();
        assert!(nt.tables().is_none());
        for a in f.elements().step_by(7) {
            for b in f.elements().step_by(11) {
                assert_eq!(f.mul(a, b), nt.mul(a, b));
            }
            assert_eq!(f.dlog(a), nt.dlog(a));
            assert_eq!(f.is_square(a), nt.is_square(a));
        }
    }

    #[test]
    fn dlog_round_trip() {
        let f = make_extension(3, 4).unwrap();
        for x in f.units() {
            let j = f.dlog(x).unwrap();
            assert_eq!(f.pow(f.generator(), j), x);
        }
        assert_eq!(f.dlog(f.zero()), None);
    }

    #[test]
    fn nth_power_counts() {
        let f7 = make_prime_field(7).unwrap();
        assert_eq!(f7.nth_power_solution_count(f7.from_int(1), 3).unwrap(), 3);
        assert_eq!(f7.nth_power_solution_count(f7.from_int(3), 3).unwrap(), 0);
        assert_eq!(f7.nth_power_solution_count(f7.zero(), 3).unwrap(), 1);
        assert!(matches!(
            f7.nth_power_solution_count(f7.one(), 4),
            Err(Error::BadDivisor { .. })
        ));
    }

    #[test]
    fn norm_examples() {
        let f = make_extension(11, 2).unwrap();
        for a in 0..11 {
            let x = f.from_int(a);
            assert_eq!(f.norm_to_base(x), f.mul(x, x));
        }
        for x in f.units() {
            let n = f.norm_to_base(x);
            let r = f.to_prime(n).expect("norm lies in the base field");
            assert_eq!(arith::pow_mod(r, 10, 11), 1);
        }
    }

    #[test]
    fn size_budget() {
        let err = FieldCtx::with_config(
            101,
            5,
            &FieldConfig {
                table_budget: 1 << 20,
                max_order: 1 << 30,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::SizeBudgetExceeded { .. }));
    }
}
