//! L-polynomials from point counts and the power-sum calculus around them.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::CycInt;
use crate::error::{Error, Result};

/// `L(T) = 1 + c_1 T + ... + c_{2g} T^{2g}` for a curve of genus `g` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LPolynomial {
    pub q: u64,
    pub genus: usize,
    /// `c_0, ..., c_{2g}`, lowest degree first.
    pub coeffs: Vec<i128>,
}

/// `p_k = q^k + 1 - N_k`, the power sums of the reciprocal roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSums {
    pub q: u64,
    pub sums: Vec<i128>,
}

fn q_pow(q: u64, k: usize) -> Result<i128> {
    (q as i128)
        .checked_pow(k as u32)
        .ok_or(Error::Overflow("power of q"))
}

impl PowerSums {
    pub fn from_counts(counts: &[u64], q: u64) -> Result<PowerSums> {
        let sums = counts
            .iter()
            .enumerate()
            .map(|(i, &n)| Ok(q_pow(q, i + 1)? + 1 - n as i128))
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerSums { q, sums })
    }

    /// Weil bound with slack: `|p_k| <= 2g q^(k/2) + g`.
    pub fn within_weil_bound(&self, g: usize) -> bool {
        self.sums.iter().enumerate().all(|(i, &p)| {
            let bound = 2.0 * g as f64 * (self.q as f64).powf((i + 1) as f64 / 2.0) + g as f64;
            (p as f64).abs() <= bound
        })
    }
}

impl LPolynomial {
    /// Build from explicit coefficients; checks `c_0 = 1`, even degree and
    /// the functional equation.
    pub fn from_coeffs(q: u64, coeffs: Vec<i128>) -> Result<LPolynomial> {
        if coeffs.first() != Some(&1) || coeffs.len() % 2 != 1 {
            return Err(Error::PreconditionViolated(
                "L-polynomial needs c_0 = 1 and even degree".into(),
            ));
        }
        let l = LPolynomial {
            q,
            genus: coeffs.len() / 2,
            coeffs,
        };
        if !l.satisfies_functional_equation() {
            return Err(Error::PreconditionViolated(
                "coefficients violate c_{2g-i} = q^(g-i) c_i".into(),
            ));
        }
        Ok(l)
    }

    /// `1 - a T + q T^2`.
    pub fn elliptic(q: u64, a: i64) -> LPolynomial {
        LPolynomial {
            q,
            genus: 1,
            coeffs: vec![1, -(a as i128), q as i128],
        }
    }

    pub fn satisfies_functional_equation(&self) -> bool {
        let g = self.genus;
        self.coeffs.len() == 2 * g + 1
            && (0..=g).all(|i| {
                q_pow(self.q, g - i)
                    .ok()
                    .and_then(|qp| qp.checked_mul(self.coeffs[i]))
                    == Some(self.coeffs[2 * g - i])
            })
    }

    pub fn mul(&self, other: &LPolynomial) -> Result<LPolynomial> {
        if self.q != other.q {
            return Err(Error::FieldMismatch);
        }
        let mut c = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(b).ok_or(Error::Overflow("L-polynomial product"))?;
                c[i + j] = c[i + j].checked_add(t).ok_or(Error::Overflow("L-polynomial product"))?;
            }
        }
        Ok(LPolynomial {
            q: self.q,
            genus: self.genus + other.genus,
            coeffs: c,
        })
    }

    /// `L(1) = #Jac(F_q)`.
    pub fn at_one(&self) -> i128 {
        self.coeffs.iter().sum()
    }

    /// Numeric check that every reciprocal root has modulus `sqrt q`.
    /// Reporting only; never used to decide a verification status.
    pub fn weil_report(&self) -> WeilReport {
        let roots = reciprocal_roots(&squarefree_part(&self.coeffs));
        let target = (self.q as f64).sqrt();
        let max_deviation = roots
            .iter()
            .map(|r| (r.norm() - target).abs())
            .fold(0.0, |m, d| if d.is_nan() { f64::INFINITY } else { m.max(d) });
        WeilReport {
            max_deviation,
            ok: max_deviation < 1e-6 * target.max(1.0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeilReport {
    pub max_deviation: f64,
    pub ok: bool,
}

fn rat_poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let f = r.last().unwrap().clone() / &lead;
        let shift = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &f * bi;
        }
        r.pop();
        while r.last().is_some_and(|v| v.is_zero()) {
            r.pop();
        }
    }
    r
}

fn rat_poly_div(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let mut q = vec![BigRational::zero(); a.len() + 1 - b.len()];
    let lead = b.last().unwrap().clone();
    for shift in (0..q.len()).rev() {
        let f = r[shift + b.len() - 1].clone() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &f * bi;
        }
        q[shift] = f;
    }
    q
}

/// `c / gcd(c, c')` over `Q`, rescaled to integer-valued floats. Repeated
/// roots would otherwise limit the root finder to `eps^(1/m)` accuracy.
fn squarefree_part(c: &[i128]) -> Vec<i128> {
    let f: Vec<BigRational> = c.iter().map(|&v| BigRational::from_integer(v.into())).collect();
    if f.len() <= 2 {
        return c.to_vec();
    }
    let df: Vec<BigRational> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, v)| v * BigRational::from_integer(i.into()))
        .collect();
    let (mut a, mut b) = (f.clone(), df);
    while !b.is_empty() {
        let r = rat_poly_rem(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    let part = rat_poly_div(&f, &a);
    // clear denominators and content
    let den = part.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = part.iter().map(|v| (v * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    ints.iter()
        .map(|v| (v / &g).to_i128().expect("divisor of an i128 polynomial"))
        .collect()
}

/// Roots of `T^d L(1/T)` (the reciprocal roots of `L`) by Durand-Kerner.
fn reciprocal_roots(c: &[i128]) -> Vec<Complex64> {
    let d = c.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    // monic: T^d + c_1 T^(d-1) + ... + c_d
    let lead = c[0] as f64;
    let mono: Vec<Complex64> = c.iter().map(|&v| Complex64::new(v as f64 / lead, 0.0)).collect();
    let eval = |x: Complex64| mono.iter().fold(Complex64::new(0.0, 0.0), |acc, &m| acc * x + m);
    let radius = c
        .iter()
        .skip(1)
        .map(|&v| (v as f64 / lead).abs())
        .fold(1.0, f64::max)
        .powf(1.0 / d as f64);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|i| seed.powu(i as u32) * radius).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-14 * radius {
            break;
        }
    }
    z
}

/// Newton's identities: the coefficients `c_1..c_g` from `p_1..p_g`, then
/// the upper half from the functional equation.
pub fn lpoly_from_counts(counts: &[u64], q: u64, g: usize) -> Result<LPolynomial> {
    if counts.len() < g {
        return Err(Error::PreconditionViolated(format!(
            "need {g} counts, got {}",
            counts.len()
        )));
    }
    let p = PowerSums::from_counts(&counts[..g], q)?.sums;
    let mut c = vec![0i128; 2 * g + 1];
    c[0] = 1;
    for k in 1..=g {
        let mut acc = p[k - 1];
        for i in 1..k {
            acc += c[i] * p[k - i - 1];
        }
        if acc % k as i128 != 0 {
            return Err(Error::InexactNewtonDivision { k });
        }
        c[k] = -acc / k as i128;
    }
    for i in 0..g {
        c[2 * g - i] = q_pow(q, g - i)?
            .checked_mul(c[i])
            .ok_or(Error::Overflow("functional equation"))?;
    }
    Ok(LPolynomial {
        q,
        genus: g,
        coeffs: c,
    })
}

/// `p_1, ..., p_k` from the coefficients, Newton's identities run forward.
pub fn power_sums_from_lpoly(l: &LPolynomial, k: usize) -> Result<Vec<i128>> {
    let c = |i: usize| l.coeffs.get(i).copied().unwrap_or(0);
    let mut p: Vec<i128> = Vec::with_capacity(k);
    for j in 1..=k {
        let mut acc = (j as i128)
            .checked_mul(c(j))
            .ok_or(Error::Overflow("power sums"))?;
        for i in 1..j {
            let t = c(i)
                .checked_mul(p[j - i - 1])
                .ok_or(Error::Overflow("power sums"))?;
            acc = acc.checked_add(t).ok_or(Error::Overflow("power sums"))?;
        }
        p.push(-acc);
    }
    Ok(p)
}

/// `N_k = q^k + 1 - p_k`.
pub fn counts_from_lpoly(l: &LPolynomial, k: usize) -> Result<i128> {
    let p = power_sums_from_lpoly(l, k)?;
    Ok(q_pow(l.q, k)? + 1 - p[k - 1])
}

/// `T(0,0) = 2`, `T(n,0) = 1`, otherwise `n (n-i-1)! / (i! (n-2i)!)`.
pub fn dickson_t(n: u64, i: u64) -> Result<i128> {
    if 2 * i > n {
        return Err(Error::OutOfRange(format!("T({n}, {i}) needs i <= n/2")));
    }
    if i == 0 {
        return Ok(if n == 0 { 2 } else { 1 });
    }
    // n/(n-i) * C(n-i, i)
    let m = n - i;
    let mut binom: i128 = 1;
    for j in 0..i {
        binom = binom
            .checked_mul((m - j) as i128)
            .ok_or(Error::Overflow("T(n, i)"))?
            / (j + 1) as i128;
    }
    Ok(binom * n as i128 / m as i128)
}

/// `sum_i (-1)^i T(n,i) q^i a^(n-2i)`, the value of `alpha^n + conj(alpha)^n`
/// when `alpha + conj(alpha) = a` and `alpha conj(alpha) = q`.
pub fn power_sum_expand(a: &CycInt, q: u64, n: u64) -> Result<CycInt> {
    let mut acc = CycInt::zero(a.order());
    for i in 0..=n / 2 {
        let t = dickson_t(n, i)?;
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let scale = BigInt::from(sign * t) * BigInt::from(q).pow(i as u32);
        acc = acc + a.pow((n - 2 * i) as u32).scale(&scale);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(factors: &[&[i128]]) -> Vec<i128> {
        factors.iter().fold(vec![1i128], |acc, f| {
            let mut out = vec![0i128; acc.len() + f.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            out
        })
    }

    #[test]
    fn example_square_round_trip() {
        let quartic: &[i128] = &[1, 6, 26, 66, 121];
        let l = LPolynomial::from_coeffs(11, expand(&[quartic, quartic])).unwrap();
        assert_eq!(counts_from_lpoly(&l, 1).unwrap(), 24);
        let counts: Vec<u64> = (1..=4)
            .map(|k| counts_from_lpoly(&l, k).unwrap() as u64)
            .collect();
        assert_eq!(lpoly_from_counts(&counts, 11, 4).unwrap(), l);
        assert!(l.weil_report().ok);
    }

    #[test]
    fn genus_one_trace_zero() {
        let l = lpoly_from_counts(&[8], 7, 1).unwrap();
        assert_eq!(l.coeffs, vec![1, 0, 7]);
    }

    #[test]
    fn inconsistent_counts_are_caught() {
        // p_1 = 1, p_2 = 0 -> 2 c_2 = -(0 + c_1 p_1) = 1, not divisible
        let q = 5u64;
        let counts = [q + 1 - 1, q * q + 1];
        assert_eq!(
            lpoly_from_counts(&counts, q, 2),
            Err(Error::InexactNewtonDivision { k: 2 })
        );
    }

    #[test]
    fn dickson_values() {
        assert_eq!(dickson_t(0, 0).unwrap(), 2);
        assert_eq!(dickson_t(2, 1).unwrap(), 2);
        assert_eq!(dickson_t(3, 1).unwrap(), 3);
        assert_eq!(dickson_t(4, 2).unwrap(), 2);
        assert!(dickson_t(3, 2).is_err());
    }

    #[test]
    fn expansion_small_n() {
        let a = CycInt::from_int(1, 7);
        assert_eq!(power_sum_expand(&a, 11, 1).unwrap(), a);
        assert_eq!(
            power_sum_expand(&a, 11, 2).unwrap(),
            CycInt::from_int(1, 49 - 22)
        );
    }

    #[test]
    fn weil_report_handles_repeated_factors() {
        let l = LPolynomial::from_coeffs(11, expand(&[&[1, 3, 11], &[1, 3, 11], &[1, 3, 11], &[1, 3, 11]])).unwrap();
        let r = l.weil_report();
        assert!(r.ok, "{r:?}");
        assert_eq!(squarefree_part(&l.coeffs), vec![1, 3, 11]);
    }

    #[test]
    fn weil_report_flags_a_bad_polynomial() {
        let bad = LPolynomial {
            q: 5,
            genus: 1,
            coeffs: vec![1, 7, 5],
        };
        assert!(!bad.weil_report().ok);
    }
}
