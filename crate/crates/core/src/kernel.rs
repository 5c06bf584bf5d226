//! Residue histograms of `w0 log y + w1 log(1-y) + w2 log(1-xy)` over `y != 0`.
//!
//! Point counts and the order-`l` character sums both reduce to this one
//! pass. With log tables it touches no field arithmetic at all: `log(1-y)`
//! is a Zech lookup at `log y + log(-1)`.

use rayon::prelude::*;

use crate::ff::{FieldCtx, FieldElement, NO_LOG};

const PAR_THRESHOLD: u64 = 1 << 15;
const CHUNK: u64 = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Histogram {
    /// `bins[r]` counts the `y` with all three factors nonzero and residue `r`.
    pub bins: Vec<i64>,
    /// Number of `y != 0` with `1 - y = 0` or `1 - xy = 0`.
    pub degenerate: i64,
}

impl Histogram {
    fn empty(n: u64) -> Histogram {
        Histogram {
            bins: vec![0; n as usize],
            degenerate: 0,
        }
    }

    fn merge(mut self, other: Histogram) -> Histogram {
        for (a, b) in self.bins.iter_mut().zip(other.bins) {
            *a += b;
        }
        self.degenerate += other.degenerate;
        self
    }
}

/// `n` must divide `q - 1`; weights are taken mod `n`.
pub(crate) fn histogram(ctx: &FieldCtx, x: FieldElement, n: u64, w: [u64; 3]) -> Histogram {
    let big = ctx.unit_order();
    debug_assert_eq!(big % n, 0);
    let w = w.map(|v| v % n);
    let run = |lo: u64, hi: u64| -> Histogram {
        match ctx.tables() {
            Some(t) => chunk_tables(ctx, t, x, n, w, lo, hi),
            None => chunk_direct(ctx, x, n, w, lo, hi),
        }
    };
    if big < PAR_THRESHOLD {
        return run(0, big);
    }
    let chunks = big.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| run(c * CHUNK, ((c + 1) * CHUNK).min(big)))
        .reduce(|| Histogram::empty(n), Histogram::merge)
}

/// Table path: `y = g^j` for `j` in `[lo, hi)`.
fn chunk_tables(
    ctx: &FieldCtx,
    t: &crate::ff::Tables,
    x: FieldElement,
    n: u64,
    w: [u64; 3],
    lo: u64,
    hi: u64,
) -> Histogram {
    let big = ctx.unit_order();
    let half = ctx.log_minus_one();
    let lx = (!x.is_zero()).then(|| t.log[x.packed() as usize] as u64);
    let mut h = Histogram::empty(n);
    for j in lo..hi {
        let l1 = t.zech[((j + half) % big) as usize];
        if l1 == NO_LOG {
            h.degenerate += 1;
            continue;
        }
        let l2 = match lx {
            None => 0,
            Some(lx) => {
                let v = t.zech[((lx + j + half) % big) as usize];
                if v == NO_LOG {
                    h.degenerate += 1;
                    continue;
                }
                v as u64
            }
        };
        let r = (w[0] * (j % n) + w[1] * (l1 as u64 % n) + w[2] * (l2 % n)) % n;
        h.bins[r as usize] += 1;
    }
    h
}

/// Fallback without tables: packed elements `lo+1 ..= hi` with per-element
/// power-residue logs.
fn chunk_direct(
    ctx: &FieldCtx,
    x: FieldElement,
    n: u64,
    w: [u64; 3],
    lo: u64,
    hi: u64,
) -> Histogram {
    let one = ctx.one();
    let mut h = Histogram::empty(n);
    for v in lo + 1..=hi {
        let y = FieldElement::from_packed(v);
        let a = ctx.sub(one, y);
        let b = ctx.sub(one, ctx.mul(x, y));
        if a.is_zero() || b.is_zero() {
            h.degenerate += 1;
            continue;
        }
        let r = [y, a, b]
            .iter()
            .zip(w)
            .map(|(&e, wi)| wi * ctx.dlog_mod(e, n).expect("nonzero"))
            .sum::<u64>()
            % n;
        h.bins[r as usize] += 1;
    }
    h
}
