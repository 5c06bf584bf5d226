use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::arith::{inv_mod, mul_mod};

/// `y^2 = x^3 + a x^2 + b x + c` over the prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticCurve {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Point {
    Infinity,
    Affine(u64, u64),
}

fn red(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

impl EllipticCurve {
    pub fn new(p: u64, a: i128, b: i128, c: i128) -> Result<EllipticCurve> {
        let e = EllipticCurve {
            p,
            a: red(a, p),
            b: red(b, p),
            c: red(c, p),
        };
        if e.discriminant() == 0 {
            return Err(Error::Singular);
        }
        Ok(e)
    }

    /// Discriminant of the cubic `x^3 + a x^2 + b x + c`, reduced mod `p`.
    pub fn discriminant(&self) -> u64 {
        let p = self.p as i128;
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let m = |x: i128, y: i128| x * y % p;
        let d = m(m(a, a), m(b, b)) - 4 * m(m(b, b), b) - 4 * m(m(a, a), m(a, c))
            - 27 * m(c, c)
            + 18 * m(m(a, b), c);
        red(d, self.p)
    }

    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        let x2 = mul_mod(x, x, p);
        let v = mul_mod(x2, x, p) as u128
            + mul_mod(self.a, x2, p) as u128
            + mul_mod(self.b, x, p) as u128
            + self.c as u128;
        (v % p as u128) as u64
    }

    pub fn contains(&self, pt: Point) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => mul_mod(y, y, self.p) == self.rhs(x % self.p),
        }
    }

    /// All points over `F_p`, infinity first, affine points sorted.
    pub fn points(&self) -> Vec<Point> {
        let p = self.p;
        let mut roots: Vec<Vec<u64>> = vec![Vec::new(); p as usize];
        for y in 0..p {
            roots[mul_mod(y, y, p) as usize].push(y);
        }
        let mut out = vec![Point::Infinity];
        for x in 0..p {
            for &y in &roots[self.rhs(x) as usize] {
                out.push(Point::Affine(x, y));
            }
        }
        out
    }

    /// `#E(F_p)`, counting the point at infinity.
    pub fn count(&self) -> u64 {
        let p = self.p;
        let mut sq = vec![0u64; p as usize];
        for y in 0..p {
            sq[mul_mod(y, y, p) as usize] += 1;
        }
        1 + (0..p).map(|x| sq[self.rhs(x) as usize]).sum::<u64>()
    }

    /// `p + 1 - #E(F_p)`.
    pub fn trace(&self) -> i64 {
        self.p as i64 + 1 - self.count() as i64
    }

    /// `(a, b, c) -> (d a, d^2 b, d^3 c)`.
    pub fn quadratic_twist(&self, d: i64) -> Result<EllipticCurve> {
        let d = red(d as i128, self.p);
        if d == 0 {
            return Err(Error::PreconditionViolated("twist by zero".into()));
        }
        let d2 = mul_mod(d, d, self.p);
        Ok(EllipticCurve {
            p: self.p,
            a: mul_mod(d, self.a, self.p),
            b: mul_mod(d2, self.b, self.p),
            c: mul_mod(mul_mod(d2, d, self.p), self.c, self.p),
        })
    }
}

/// `E1: Y^2 = Z^3 + 3(2+z) Z^2 + 3(3-z)(1-z) Z + z(1-z)^2` and
/// `E2: V^2 = U^3 + 3(3-z) U^2 + 3(2+z) z U + (1-z) z^2`.
pub fn elliptic_e1_e2(p: u64, z: u64) -> Result<(EllipticCurve, EllipticCurve)> {
    let z = (z % p) as i128;
    let e1 = EllipticCurve::new(
        p,
        3 * (2 + z),
        3 * (3 - z) * (1 - z),
        z * (1 - z) * (1 - z),
    )?;
    let e2 = EllipticCurve::new(p, 3 * (3 - z), 3 * (2 + z) * z, (1 - z) * z * z)?;
    Ok((e1, e2))
}

/// `E2` twisted by `-3`.
pub fn twisted_e2(p: u64, z: u64) -> Result<EllipticCurve> {
    elliptic_e1_e2(p, z)?.1.quadratic_twist(-3)
}

/// Image of a point of `E1` under the explicit degree-3 map to the twist of
/// `E2` by `-3`. Points with `x = 1 - z` go to infinity.
pub fn isogeny_phi(p: u64, z: u64, pt: Point) -> Result<Point> {
    let (e1, _) = elliptic_e1_e2(p, z)?;
    if !e1.contains(pt) {
        return Err(Error::NotOnCurve);
    }
    let Point::Affine(x, y) = pt else {
        return Ok(Point::Infinity);
    };
    let z = (z % p) as i128;
    let zm = z - 1;
    let a = 9;
    let b = 3 * (1 - z) * (z + 9);
    let c = (27 - 2 * z) * zm * zm;
    let d = 3 * zm;
    let e = 3 * (z + 15) * zm;
    let f = (z - 81) * zm * zm;
    let den = red(x as i128 + zm, p);
    if den == 0 {
        return Ok(Point::Infinity);
    }
    let cubic = |s: i128, t: i128, u: i128| -> u64 {
        let x = x as i128;
        let v = ((x * x % p as i128) * x) + red(s, p) as i128 * (x * x % p as i128)
            + red(t, p) as i128 * x
            + red(u, p) as i128;
        red(v, p)
    };
    let inv = inv_mod(den, p);
    let inv2 = mul_mod(inv, inv, p);
    let u = mul_mod(cubic(a, b, c), inv2, p);
    let v = mul_mod(mul_mod(cubic(d, e, f), y, p), mul_mod(inv2, inv, p), p);
    Ok(Point::Affine(u, v))
}

/// Legendre-form curve `y^2 = x(x-1)(x-t)`.
pub fn koike_curve(p: u64, t: u64) -> Result<EllipticCurve> {
    let t = t as i128;
    EllipticCurve::new(p, -(1 + t), t, 0)
}

/// `y^2 = (x-1)(x^2+t)`.
pub fn ono_curve(p: u64, t: u64) -> Result<EllipticCurve> {
    let t = t as i128;
    EllipticCurve::new(p, -1, t, -t)
}
