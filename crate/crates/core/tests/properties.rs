use num_bigint::BigInt;
use proptest::prelude::*;

use hfq::cyclo::{CycInt, CycPoly};
use hfq::zeta::{counts_from_lpoly, dickson_t, lpoly_from_counts, power_sum_expand, LPolynomial};

const ORDERS: [u64; 7] = [1, 2, 3, 5, 7, 10, 12];

fn cyc(n: u64) -> impl Strategy<Value = CycInt> {
    prop::collection::vec(-50i64..50, n as usize)
        .prop_map(move |c| CycInt::new(n, c.into_iter().map(BigInt::from).collect()))
}

fn triple() -> impl Strategy<Value = (CycInt, CycInt, CycInt)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|n| (cyc(n), cyc(n), cyc(n)))
}

fn units(n: u64) -> Vec<i64> {
    (1..=n as i64).filter(|&j| num_integer::gcd(j, n as i64) == 1).collect()
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        let n = a.order();
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &CycInt::zero(n), a.clone());
        prop_assert_eq!(&a * &CycInt::one(n), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn galois_action_is_a_ring_homomorphism((a, b, _c) in triple(), pick in 0usize..8) {
        let n = a.order();
        let js = units(n);
        let j = js[pick % js.len()];
        let s = |x: &CycInt| x.galois_apply(j).unwrap();
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        // the norm is Galois invariant
        prop_assert_eq!(s(&a).norm(), a.norm());
    }

    #[test]
    fn exact_division_undoes_multiplication((a, b, _c) in triple()) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn complex_embedding_is_multiplicative((a, b, _c) in triple()) {
        let lhs = (&a * &b).to_complex();
        let rhs = a.to_complex() * b.to_complex();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
        let sum = (&a + &b).to_complex() - a.to_complex() - b.to_complex();
        prop_assert!(sum.norm() <= 1e-9 * (1.0 + a.to_complex().norm() + b.to_complex().norm()));
    }

    #[test]
    fn embedding_then_restriction(a in cyc(5), m in prop::sample::select(vec![10u64, 15, 20])) {
        let up = a.embed(m).unwrap();
        prop_assert_eq!(&up, &a);
        let back = up.restrict(5).unwrap();
        prop_assert_eq!(back.coeffs(), a.coeffs());
    }

    #[test]
    fn polynomial_division_over_zeta((p, q) in (prop::collection::vec(cyc(5), 1..4), prop::collection::vec(cyc(5), 1..4))) {
        let p = CycPoly::new(5, p).unwrap();
        let q = CycPoly::new(5, q).unwrap();
        prop_assume!(!q.is_zero());
        let prod = p.mul(&q).unwrap();
        prop_assert_eq!(prod.divide_exact(&q).unwrap(), p);
    }

    #[test]
    fn functional_equation_is_closed_under_products(
        q in prop::sample::select(vec![5u64, 7, 11, 13, 31]),
        traces in prop::collection::vec(-1.0f64..1.0, 1..5),
    ) {
        let bound = 2.0 * (q as f64).sqrt();
        let ls: Vec<LPolynomial> = traces
            .iter()
            .map(|t| LPolynomial::elliptic(q, (t * bound).floor() as i64))
            .collect();
        let l = ls[1..].iter().fold(ls[0].clone(), |acc, f| acc.mul(f).unwrap());
        prop_assert!(l.satisfies_functional_equation());
        prop_assert_eq!(l.genus, ls.len());
        prop_assert!(LPolynomial::from_coeffs(q, l.coeffs.clone()).is_ok());
    }

    #[test]
    fn newton_round_trip(
        q in prop::sample::select(vec![3u64, 5, 7, 11, 13, 31]),
        traces in prop::collection::vec(-1.0f64..1.0, 1..5),
    ) {
        let bound = 2.0 * (q as f64).sqrt();
        let l = traces
            .iter()
            .map(|t| LPolynomial::elliptic(q, (t * bound).floor() as i64))
            .reduce(|a, b| a.mul(&b).unwrap())
            .unwrap();
        let g = l.genus;
        let counts: Vec<i128> = (1..=g).map(|k| counts_from_lpoly(&l, k).unwrap()).collect();
        // a product of arbitrary Weil factors need not come from a curve
        prop_assume!(counts.iter().all(|&n| n >= 0));
        let counts: Vec<u64> = counts.into_iter().map(|n| n as u64).collect();
        prop_assert_eq!(lpoly_from_counts(&counts, q, g).unwrap(), l);
    }

    #[test]
    fn power_sums_follow_the_recurrence(a in -60i64..60, q in 2u64..200, n in 0u64..13) {
        let (mut s0, mut s1) = (BigInt::from(2), BigInt::from(a));
        for _ in 0..n {
            let s2 = BigInt::from(a) * &s1 - BigInt::from(q) * &s0;
            s0 = std::mem::replace(&mut s1, s2);
        }
        let x = CycInt::from_int(1, a);
        prop_assert_eq!(power_sum_expand(&x, q, n).unwrap().as_integer().unwrap(), s0.clone());
        if n > 0 {
            let direct: BigInt = (0..=n / 2)
                .map(|i| {
                    let t = BigInt::from(dickson_t(n, i).unwrap());
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    t * sign * BigInt::from(q).pow(i as u32) * BigInt::from(a).pow((n - 2 * i) as u32)
                })
                .sum();
            prop_assert_eq!(direct, s0);
        }
    }
}
