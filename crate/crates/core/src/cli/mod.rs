//! The `hfq` command line. Every command prints JSON lines on stdout;
//! exit code 0 means success, 1 a refuted check, 2 a usage or parameter error.

pub mod cache;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::curves::CurveInstance;
use crate::error::{Error, Result};
use crate::ff::arith::is_prime;
use crate::ff::FieldCtx;
use crate::hgf::{hgf2f1_defn35, hgf2f1_thm36, order_l_character};
use crate::verify::{
    check_koike, check_ono, scan, CountSource, MemoCounts, Status, VerificationReport, Verifier,
    ZPolicy,
};
use cache::CachedCounts;

#[derive(Parser, Debug)]
#[command(name = "hfq", version, about = "Finite-field hypergeometric functions and superelliptic zeta numerators")]
pub struct Cli {
    /// Directory for the instance cache.
    #[arg(long, global = true, env = "HFQ_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hypergeometric function evaluation.
    Hgf {
        #[command(subcommand)]
        op: HgfOp,
    },
    /// Point count N_k of one curve.
    Count {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// L-polynomial of one curve.
    Zeta {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Run one check.
    Verify(VerifyArgs),
    /// Run checks over a range of primes.
    Scan(ScanArgs),
}

#[derive(Subcommand, Debug)]
pub enum HgfOp {
    /// `2F1(eta^a, eta^b; eta^c | x)` with `eta` of order l on F_q.
    Eval {
        #[arg(long)]
        q: u64,
        #[arg(long = "order-l")]
        order_l: u64,
        #[arg(long = "a-exp", allow_hyphen_values = true)]
        a_exp: i64,
        #[arg(long = "b-exp", allow_hyphen_values = true)]
        b_exp: i64,
        #[arg(long = "c-exp", allow_hyphen_values = true)]
        c_exp: i64,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        /// Multiply the value by q.
        #[arg(long = "q-scaled")]
        q_scaled: bool,
        #[arg(long, value_enum, default_value_t = Via::Defn35)]
        via: Via,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Defn35,
    Thm36,
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    #[arg(long)]
    pub l: u64,
    #[arg(long)]
    pub m: u64,
    #[arg(long)]
    pub s: u64,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub z: u64,
}

impl CurveArgs {
    fn instance(&self) -> Result<CurveInstance> {
        CurveInstance::from_ms(self.l, self.m, self.s, self.q, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Theorem1,
    Conjecture,
    Partial,
    Relations,
    L3Suite,
    L5Split,
    Koike,
    Ono,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: CheckKind,
    #[arg(long)]
    pub l: Option<u64>,
    /// Defaults to 1.
    #[arg(long)]
    pub m: Option<u64>,
    /// Defaults to l - m.
    #[arg(long)]
    pub s: Option<u64>,
    /// Field size; `--p` is accepted for the elliptic oracles.
    #[arg(long, alias = "p")]
    pub q: u64,
    /// A single value or `all`.
    #[arg(long, default_value = "all")]
    pub z: String,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long = "k-max")]
    pub k_max: Option<u32>,
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    /// Keep the factor pairing in conjecture reports.
    #[arg(long = "show-pairing")]
    pub show_pairing: bool,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    pub l: u64,
    #[arg(long = "q-max")]
    pub q_max: u64,
    /// `all`, `sample:N` or `sample:N:seedS`.
    #[arg(long = "z-policy", default_value = "all")]
    pub z_policy: String,
    /// Comma-separated check names.
    #[arg(long, value_delimiter = ',', default_value = "conjecture")]
    pub checks: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// JSON-lines report; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV summary with columns l,q,z,check,status,wall_ms.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Keep wall times in the JSON-lines report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(serde::Serialize)]
struct CsvRow<'a> {
    l: u64,
    q: u64,
    z: u64,
    check: &'a str,
    status: Status,
    wall_ms: u64,
}

enum Outcome {
    Ok,
    Refuted,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::PreconditionViolated(msg.into())
}

fn emit(out: &mut impl Write, v: &impl serde::Serialize) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(v).expect("serializable"))
}

fn prime_power(q: u64) -> Result<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(Error::NotPrime(q))?;
    let (mut r, mut k) = (q, 0u32);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    if r != 1 || !is_prime(p) {
        return Err(Error::NotPrime(q));
    }
    Ok((p, k))
}

fn hgf_eval(
    q: u64,
    l: u64,
    exps: (i64, i64, i64),
    x: i64,
    q_scaled: bool,
    via: Via,
) -> Result<Value> {
    let (p, k) = prime_power(q)?;
    let ctx = FieldCtx::shared(p, k)?;
    let eta = order_l_character(&ctx, l)?;
    let (a, b, c) = (eta.pow(exps.0), eta.pow(exps.1), eta.pow(exps.2));
    let x = ctx.from_int(x);
    let v = match via {
        Via::Defn35 => hgf2f1_defn35(&ctx, &a, &b, &c, x)?,
        Via::Thm36 => hgf2f1_thm36(&ctx, &a, &b, &c, x)?,
    };
    let v = if q_scaled { v.scale_int(q) } else { v }.embed(l)?;
    Ok(json!({ "value": v, "q_scaled": q_scaled }))
}

fn z_values(spec: &str, q: u64) -> Result<Vec<u64>> {
    if spec == "all" {
        return Ok((2..q).collect());
    }
    let z: u64 = spec
        .parse()
        .map_err(|_| usage(format!("--z must be an integer or `all`, got {spec:?}")))?;
    Ok(vec![z])
}

fn verify(args: &VerifyArgs, v: &Verifier, out: &mut impl Write) -> Result<Vec<VerificationReport>> {
    let q = args.q;
    let mut reports = Vec::new();
    match args.check {
        CheckKind::Koike => reports.push(check_koike(q)?),
        CheckKind::Ono => reports.push(check_ono(q)?),
        CheckKind::L3Suite => {
            for z in z_values(&args.z, q)? {
                reports.push(v.check_l3_suite(q, z)?);
            }
        }
        CheckKind::L5Split => {
            for z in z_values(&args.z, q)? {
                reports.push(v.check_l5_split(q, z)?);
            }
        }
        kind => {
            let l = args.l.ok_or_else(|| usage("--l is required for this check"))?;
            let m = args.m.unwrap_or(1);
            let s = args.s.unwrap_or(l.saturating_sub(m));
            for z in z_values(&args.z, q)? {
                let c = CurveInstance::from_ms(l, m, s, q, z)?;
                let g = c.genus()? as u32;
                let mut r = match kind {
                    CheckKind::Theorem1 => v.check_theorem1(&c, args.k)?,
                    CheckKind::Conjecture => v.check_conjecture_full(&c)?,
                    CheckKind::Partial => v.check_conjecture_partial(&c, args.k_max.unwrap_or(g))?,
                    CheckKind::Relations => v.check_relation_powers(&c, args.n)?,
                    _ => unreachable!(),
                };
                if kind == CheckKind::Conjecture && !args.show_pairing {
                    if let Some(w) = r.witness.as_object_mut() {
                        w.remove("pairing");
                    }
                }
                reports.push(r);
            }
        }
    }
    for r in &reports {
        emit(out, r)?;
    }
    Ok(reports)
}

fn run_scan(args: &ScanArgs, v: &Verifier, out: &mut impl Write) -> Result<Vec<VerificationReport>> {
    let policy: ZPolicy = args.z_policy.parse()?;
    let reports = scan(v, args.l, args.q_max, policy, &args.checks, args.jobs)?;
    {
        let mut sink: Box<dyn Write> = match &args.out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(&mut *out),
        };
        for r in &reports {
            let mut r = r.clone();
            if !args.timing {
                r.wall_ms = None;
            }
            emit(&mut sink, &r)?;
        }
        sink.flush()?;
    }
    if let Some(p) = &args.csv {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_path(p)
            .map_err(|e| Error::Io(e.to_string()))?;
        for r in &reports {
            let check = match r.params.k_range {
                Some((lo, hi)) if r.check == "theorem1" && lo == hi => format!("theorem1(k={lo})"),
                _ => r.check.clone(),
            };
            w.serialize(CsvRow {
                l: args.l,
                q: r.params.q.unwrap_or(0),
                z: r.params.z.unwrap_or(0),
                check: &check,
                status: r.status,
                wall_ms: r.wall_ms.unwrap_or(0),
            })
            .map_err(|e| Error::Io(e.to_string()))?;
        }
        w.flush()?;
    }
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    eprintln!(
        "{} verified, {} refuted, {} skipped",
        count(Status::Verified),
        count(Status::Refuted),
        count(Status::Skipped)
    );
    Ok(reports)
}

fn dispatch(cli: &Cli, out: &mut impl Write) -> Result<Outcome> {
    let cached;
    let memo;
    let source: &dyn CountSource = match &cli.cache_dir {
        Some(dir) => {
            cached = CachedCounts::open(dir)?;
            &cached
        }
        None => {
            memo = MemoCounts::default();
            &memo
        }
    };
    let v = Verifier::new(source);
    let reports = match &cli.command {
        Command::Hgf {
            op:
                HgfOp::Eval {
                    q,
                    order_l,
                    a_exp,
                    b_exp,
                    c_exp,
                    x,
                    q_scaled,
                    via,
                },
        } => {
            let r = hgf_eval(*q, *order_l, (*a_exp, *b_exp, *c_exp), *x, *q_scaled, *via)?;
            emit(out, &r)?;
            return Ok(Outcome::Ok);
        }
        Command::Count { curve, k } => {
            let c = curve.instance()?;
            let n = source.count(&c, *k)?;
            emit(out, &json!({ "k": k, "N_k": n }))?;
            return Ok(Outcome::Ok);
        }
        Command::Zeta { curve } => {
            let c = curve.instance()?;
            let lp = v.lpoly(&c)?;
            emit(out, &json!({ "genus": lp.genus, "lpoly": lp.coeffs }))?;
            return Ok(Outcome::Ok);
        }
        Command::Verify(args) => verify(args, &v, out)?,
        Command::Scan(args) => run_scan(args, &v, out)?,
    };
    Ok(if reports.iter().any(|r| r.status == Status::Refuted) {
        Outcome::Refuted
    } else {
        Outcome::Ok
    })
}

/// Parses `args` and runs the command, writing JSON to `out` and
/// diagnostics to stderr. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli, out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Refuted) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
