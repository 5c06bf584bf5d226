use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::ff::arith::divisors;

fn cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Phi_n` as integer coefficients, low-to-high. Obtained from `x^n - 1` by
/// dividing out `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(f) = cache().lock().unwrap().get(&n) {
        return f.clone();
    }
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_polynomial(d);
        num = divide_monic(&num, &den);
    }
    let out: Vec<i64> = num
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect();
    let out = Arc::new(out);
    cache().lock().unwrap().insert(n, out.clone());
    out
}

fn divide_monic(num: &[i128], den: &[i64]) -> Vec<i128> {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    let mut q = vec![0i128; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &b) in den.iter().enumerate() {
                r[i + j] -= c * b as i128;
            }
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        let f = cyclotomic_polynomial(105);
        assert_eq!(f.len(), 49);
        assert!(f.contains(&-2));
    }
}
