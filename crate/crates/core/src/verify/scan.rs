use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{InstanceParams, Status, VerificationReport, Verifier};
use crate::curves::CurveInstance;
use crate::error::{Error, Result};
use crate::ff::arith::is_prime;

pub const CHECKS: &[&str] = &[
    "theorem1",
    "conjecture",
    "partial",
    "relations",
    "equal-counts",
    "model-consistency",
    "l3-suite",
    "l5-split",
];

/// Which `z` values of `F_q \ {0, 1}` a scan visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZPolicy {
    All,
    Sample { n: usize, seed: u64 },
}

impl ZPolicy {
    /// Sorted `z` values for one `q`. Sampling is seeded per `q` so adding
    /// primes to a scan leaves the earlier choices alone.
    pub fn values(&self, q: u64) -> Vec<u64> {
        let total = q.saturating_sub(2) as usize;
        match *self {
            ZPolicy::All => (2..q).collect(),
            ZPolicy::Sample { n, seed } => {
                if n >= total {
                    return (2..q).collect();
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ q.wrapping_mul(0x9e37_79b9_7f4a_7c15));
                let mut zs: Vec<u64> = sample(&mut rng, total, n)
                    .into_iter()
                    .map(|i| i as u64 + 2)
                    .collect();
                zs.sort_unstable();
                zs
            }
        }
    }
}

impl FromStr for ZPolicy {
    type Err = Error;

    /// `all`, `sample:N` or `sample:N:seedS`.
    fn from_str(s: &str) -> Result<ZPolicy> {
        let bad = || Error::OutOfRange(format!("bad z policy {s:?}"));
        if s == "all" {
            return Ok(ZPolicy::All);
        }
        let mut parts = s.split(':');
        if parts.next() != Some("sample") {
            return Err(bad());
        }
        let n = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let seed = match parts.next() {
            None => 0,
            Some(t) => t
                .strip_prefix("seed")
                .and_then(|v| v.parse().ok())
                .ok_or_else(bad)?,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(ZPolicy::Sample { n, seed })
    }
}

impl fmt::Display for ZPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZPolicy::All => write!(f, "all"),
            ZPolicy::Sample { n, seed } => write!(f, "sample:{n}:seed{seed}"),
        }
    }
}

/// One unit of scan work.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ScanItem {
    pub q: u64,
    pub z: u64,
    pub check: String,
    pub k: u32,
}

fn plan(l: u64, q_max: u64, policy: ZPolicy, checks: &[String]) -> Result<Vec<ScanItem>> {
    for c in checks {
        if !CHECKS.contains(&c.as_str()) {
            return Err(Error::OutOfRange(format!("unknown check {c:?}")));
        }
    }
    let mut items = Vec::new();
    for q in (3..=q_max).filter(|&q| is_prime(q) && q % l == 1) {
        for z in policy.values(q) {
            for c in checks {
                let ks: &[u32] = if c == "theorem1" { &[1, 2] } else { &[0] };
                for &k in ks {
                    items.push(ScanItem {
                        q,
                        z,
                        check: c.clone(),
                        k,
                    });
                }
            }
        }
    }
    items.sort();
    Ok(items)
}

fn run_item(v: &Verifier, l: u64, it: &ScanItem) -> Result<VerificationReport> {
    let c = CurveInstance::from_ms(l, 1, l - 1, it.q, it.z)?;
    let g = c.genus()? as u32;
    match it.check.as_str() {
        "theorem1" => v.check_theorem1(&c, it.k),
        "conjecture" => v.check_conjecture_full(&c),
        "partial" => v.check_conjecture_partial(&c, g.min(3)),
        "relations" => v.check_relation_powers(&c, 2.min(g)),
        "equal-counts" => {
            let pairs: Vec<(u64, u64)> = (1..l).map(|m| (m, l - m)).collect();
            v.check_equal_counts(l, it.q, it.z, &pairs, g.min(2))
        }
        "model-consistency" => v.check_model_consistency(&c),
        "l3-suite" if l == 3 => v.check_l3_suite(it.q, it.z),
        "l5-split" if l == 5 => v.check_l5_split(it.q, it.z),
        other => Err(Error::PreconditionViolated(format!(
            "{other} does not apply to l = {l}"
        ))),
    }
}

fn params(l: u64, it: &ScanItem) -> InstanceParams {
    InstanceParams {
        l: Some(l),
        q: Some(it.q),
        z: Some(it.z),
        ..Default::default()
    }
}

/// Runs `checks` over every prime `q <= q_max` with `q = 1 mod l` and the
/// `z` values chosen by `policy`. Output order depends only on the inputs.
/// Every report carries its wall time; callers wanting byte-stable output
/// clear `wall_ms`.
pub fn scan(
    v: &Verifier,
    l: u64,
    q_max: u64,
    policy: ZPolicy,
    checks: &[String],
    jobs: usize,
) -> Result<Vec<VerificationReport>> {
    if l < 2 {
        return Err(Error::PreconditionViolated("l must be at least 2".into()));
    }
    let items = plan(l, q_max, policy, checks)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::PreconditionViolated(e.to_string()))?;
    let reports = pool.install(|| {
        items
            .par_iter()
            .map(|it| {
                let t0 = Instant::now();
                let mut r = match run_item(v, l, it) {
                    Ok(r) => r,
                    Err(e @ (Error::SizeBudgetExceeded { .. } | Error::PreconditionViolated(_))) => {
                        VerificationReport::skipped(&it.check, params(l, it), e.to_string())
                    }
                    Err(e) => VerificationReport {
                        check: it.check.clone(),
                        params: params(l, it),
                        status: Status::Refuted,
                        witness: json!({ "error": e.to_string() }),
                        note: None,
                        wall_ms: None,
                    },
                };
                r.wall_ms = Some(t0.elapsed().as_millis() as u64);
                r
            })
            .collect()
    });
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy_parsing() {
        assert_eq!("all".parse::<ZPolicy>().unwrap(), ZPolicy::All);
        assert_eq!(
            "sample:5:seed42".parse::<ZPolicy>().unwrap(),
            ZPolicy::Sample { n: 5, seed: 42 }
        );
        assert_eq!(
            "sample:3".parse::<ZPolicy>().unwrap(),
            ZPolicy::Sample { n: 3, seed: 0 }
        );
        assert!("sample".parse::<ZPolicy>().is_err());
        assert!("sample:2:42".parse::<ZPolicy>().is_err());
        let p = ZPolicy::Sample { n: 4, seed: 9 };
        assert_eq!(p.to_string().parse::<ZPolicy>().unwrap(), p);
    }

    #[test]
    fn sampling_is_stable_and_in_range() {
        let p = ZPolicy::Sample { n: 5, seed: 7 };
        let a = p.values(61);
        assert_eq!(a, p.values(61));
        assert_eq!(a.len(), 5);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert!(a.iter().all(|&z| (2..61).contains(&z)));
        assert_eq!(p.values(7), vec![2, 3, 4, 5, 6]);
        assert_eq!(ZPolicy::All.values(5), vec![2, 3, 4]);
    }

    #[test]
    fn scan_order_independent_of_jobs() {
        let v = Verifier::default();
        let checks = vec!["theorem1".to_string(), "conjecture".to_string()];
        let strip = |mut rs: Vec<VerificationReport>| {
            rs.iter_mut().for_each(|r| r.wall_ms = None);
            rs
        };
        let a = strip(scan(&v, 3, 20, ZPolicy::All, &checks, 1).unwrap());
        let b = strip(scan(&v, 3, 20, ZPolicy::All, &checks, 4).unwrap());
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.status == Status::Verified), "{a:#?}");
    }
}
