// Brute-force oracles: direct enumeration of points and of character sums.

use hfq::curves::{
    count_hyperelliptic, count_points_formula_model, even_degree_model, general_birational_model,
    CurveInstance, HyperellipticModel,
};
use hfq::cyclo::CycInt;
use hfq::ff::{make_extension, make_prime_field, FieldCtx, FieldElement, MultChar};
use hfq::hgf::{char_value, order_l_character};

/// `#{(t, y) : y^l = t^e1 (1-t)^e2 (1-zt)^e3} + 1`, by tabulating `y -> y^l`.
fn brute_count(c: &CurveInstance, k: u32) -> u64 {
    let f = make_extension(c.q, k).unwrap();
    let mut lth_powers = vec![0u64; f.order() as usize];
    for y in f.elements() {
        lth_powers[f.pow(y, c.l).packed() as usize] += 1;
    }
    let z = f.from_int(c.z as i64);
    let (e1, e2, e3) = c.exponents;
    let mut n = 1;
    for t in f.elements() {
        let rhs = f.mul(
            f.mul(f.pow(t, e1), f.pow(f.sub(f.one(), t), e2)),
            f.pow(f.sub(f.one(), f.mul(z, t)), e3),
        );
        n += lth_powers[rhs.packed() as usize];
    }
    n
}

#[test]
fn formula_model_counts_match_enumeration() {
    let cases: &[(u64, u64, u64, u64, u32)] = &[
        (3, 1, 2, 7, 2),
        (3, 2, 1, 13, 1),
        (5, 2, 3, 11, 2),
        (5, 1, 3, 11, 2),
        (5, 2, 2, 11, 1),
        (7, 1, 6, 29, 1),
        (7, 3, 4, 29, 1),
        (2, 1, 1, 5, 3),
    ];
    for &(l, m, s, q, kmax) in cases {
        for z in 2..q {
            let c = CurveInstance::from_ms(l, m, s, q, z).unwrap();
            for k in 1..=kmax {
                assert_eq!(
                    count_points_formula_model(&c, k).unwrap(),
                    brute_count(&c, k),
                    "l={l} (m,s)=({m},{s}) q={q} z={z} k={k}"
                );
            }
        }
    }
}

fn brute_hyperelliptic_affine(h: &HyperellipticModel) -> u64 {
    let p = h.p;
    (0..p)
        .map(|x| {
            let fx = h.coeffs.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p);
            (0..p).filter(|y| y * y % p == fx).count() as u64
        })
        .sum()
}

#[test]
fn hyperelliptic_counts_match_enumeration() {
    for (l, p) in [(3u64, 7u64), (3, 13), (5, 11)] {
        for z in 2..p {
            for h in [general_birational_model(l, p, z), even_degree_model(l, p, z)] {
                if !h.is_squarefree() {
                    continue;
                }
                let lead = *h.coeffs.last().unwrap();
                let at_inf = if h.coeffs.len() % 2 == 0 {
                    1
                } else if (1..p).any(|y| y * y % p == lead) {
                    2
                } else {
                    0
                };
                assert_eq!(
                    count_hyperelliptic(&h, 1).unwrap(),
                    brute_hyperelliptic_affine(&h) + at_inf,
                    "l={l} p={p} z={z}"
                );
            }
        }
    }
}

fn all_chars(f: &FieldCtx) -> Vec<MultChar> {
    (0..f.unit_order())
        .map(|a| MultChar::from_omega_exponent(f, a))
        .collect()
}

fn fields() -> Vec<FieldCtx> {
    vec![
        make_prime_field(7).unwrap(),
        make_prime_field(13).unwrap(),
        make_extension(3, 2).unwrap(),
        make_extension(2, 3).unwrap(),
    ]
}

#[test]
fn orthogonality_over_elements() {
    for f in fields() {
        let n = f.unit_order();
        for chi in all_chars(&f) {
            let sum = f
                .elements()
                .fold(CycInt::zero(n), |acc, x| acc + char_value(&f, &chi, x).embed(n).unwrap());
            let want = if chi.order() == 1 { n as i64 } else { 0 };
            assert_eq!(sum.as_i64(), Some(want), "q={} {chi:?}", f.order());
        }
    }
}

#[test]
fn orthogonality_over_characters() {
    for f in fields() {
        let n = f.unit_order();
        let chars = all_chars(&f);
        for x in f.units() {
            let sum = chars
                .iter()
                .fold(CycInt::zero(n), |acc, chi| acc + char_value(&f, chi, x).embed(n).unwrap());
            let want = if x == f.one() { n as i64 } else { 0 };
            assert_eq!(sum.as_i64(), Some(want), "q={} x={x}", f.order());
        }
    }
}

/// `#{x : x^n = a} = sum over chi^n = eps of chi(a)`.
fn check_root_counting(f: &FieldCtx, n: u64, chars: &[MultChar], a: FieldElement) {
    let direct = f.elements().filter(|&x| f.pow(x, n) == a).count() as i64;
    let by_chars = chars
        .iter()
        .fold(CycInt::zero(n), |acc, chi| acc + char_value(f, chi, a).embed(n).unwrap());
    assert_eq!(by_chars.as_i64(), Some(direct), "q={} n={n} a={a}", f.order());
    assert_eq!(f.nth_power_solution_count(a, n).unwrap() as i64, direct);
}

#[test]
fn root_counting_by_characters() {
    for (p, k, n) in [(7u64, 1u32, 3u64), (11, 1, 5), (29, 1, 7), (11, 2, 5), (7, 2, 3)] {
        let f = make_extension(p, k).unwrap();
        let eta = order_l_character(&f, n).unwrap();
        let chars: Vec<MultChar> = (0..n as i64).map(|i| eta.pow(i)).collect();
        for a in f.units() {
            check_root_counting(&f, n, &chars, a);
        }
    }
}

#[test]
fn norm_composed_character_has_full_order() {
    for (p, k, l) in [(11u64, 2u32, 5u64), (11, 4, 5), (7, 3, 3), (29, 2, 7)] {
        let f = make_extension(p, k).unwrap();
        let eta = order_l_character(&f, l).unwrap();
        assert_eq!(eta.order(), l);
        // agrees with eta(N(x)) on the base field
        let base = make_prime_field(p).unwrap();
        let eta0 = MultChar::canonical(&base, l).unwrap();
        for x in f.units().step_by(37) {
            let nx = f.to_prime(f.norm_to_base(x)).unwrap();
            assert_eq!(eta.eval(&f, x), eta0.eval(&base, base.from_int(nx as i64)));
        }
    }
}
