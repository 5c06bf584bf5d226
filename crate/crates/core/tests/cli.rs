use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::{json, Value};

fn hfq(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hfq"));
    cmd.args(args).env_remove("HFQ_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("HFQ_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect()
}

fn schema(def: &str) -> JSONSchema {
    let bundle: Value =
        serde_json::from_str(include_str!("../schemas/hfq.schema.json")).unwrap();
    let mut root = bundle.clone();
    root["$ref"] = json!(format!("#/$defs/{def}"));
    JSONSchema::compile(&root).expect("schema compiles")
}

fn assert_valid(def: &str, v: &Value) {
    let s = schema(def);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errs) => errs.map(|e| e.to_string()).collect(),
    };
    panic!("{def}: {msgs:?}\n{v}");
}

const EXAMPLE: [&str; 10] = ["--l", "5", "--m", "2", "--s", "3", "--q", "11", "--z", "3"];

#[test]
fn count_output_and_errors() {
    let mut args = vec!["count"];
    args.extend(EXAMPLE);
    let o = hfq(&args, None);
    assert_eq!(code(&o), 0);
    let v = &lines(&o)[0];
    assert_valid("count", v);
    assert_eq!(v["N_k"], 24);

    let o = hfq(&["count", "--l", "5", "--m", "2", "--s", "3", "--q", "11", "--z", "1"], None);
    assert_eq!(code(&o), 2);
    let mut args = vec!["count"];
    args.extend(EXAMPLE);
    args.extend(["--k", "9"]);
    let o = hfq(&args, None);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    assert_eq!(code(&hfq(&["count", "--l", "5"], None)), 2);
    assert_eq!(code(&hfq(&["no-such-command"], None)), 2);
}

#[test]
fn hgf_eval_paths_and_zero() {
    let base = ["hgf", "eval", "--q", "11", "--order-l", "5", "--a-exp", "3", "--b-exp", "2", "--c-exp", "0"];
    let run = |extra: &[&str]| {
        let mut a = base.to_vec();
        a.extend(extra);
        hfq(&a, None)
    };
    let d = run(&["--x", "3", "--q-scaled"]);
    let t = run(&["--x", "3", "--q-scaled", "--via", "thm36"]);
    assert_eq!(code(&d), 0);
    assert_eq!(d.stdout, t.stdout);
    let v = &lines(&d)[0];
    assert_valid("hgf_eval", v);
    assert_eq!(v["value"]["coeffs"], json!([4, 0, 2, 2]));

    let z = &lines(&run(&["--x", "0"]))[0];
    assert_eq!(z["value"]["coeffs"], json!([0, 0, 0, 0]));
    assert_eq!(z["q_scaled"], false);
    // 3 does not divide 10
    let o = hfq(&["hgf", "eval", "--q", "11", "--order-l", "3", "--a-exp", "1", "--b-exp", "1", "--c-exp", "0", "--x", "2"], None);
    assert_eq!(code(&o), 2);
}

#[test]
fn zeta_is_identical_with_and_without_cache() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = vec!["zeta"];
    args.extend(EXAMPLE);
    let plain = hfq(&args, None);
    let first = hfq(&args, Some(dir.path()));
    let second = hfq(&args, Some(dir.path()));
    assert_eq!(code(&plain), 0);
    assert_eq!(plain.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
    let v = &lines(&plain)[0];
    assert_valid("zeta", v);
    assert_eq!(v["lpoly"], json!([1, 12, 88, 444, 1710, 4884, 10648, 15972, 14641]));

    let cache = fs::read_to_string(dir.path().join("instances.jsonl")).unwrap();
    let recs: Vec<Value> = cache.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 1);
    assert_valid("cache_record", &recs[0]);

    // the flag takes the same directory
    let mut flagged = vec!["--cache-dir", dir.path().to_str().unwrap()];
    flagged.extend(&args);
    assert_eq!(hfq(&flagged, None).stdout, plain.stdout);
}

#[test]
fn stale_cache_records_are_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let bogus = json!({
        "schema_version": 0,
        "key": {"l": 5, "exponents": [2, 3, 2], "q": 11, "z": 3},
        "counts": [1, 2, 3, 4],
        "lpoly": [1, 0, 0, 0, 0, 0, 0, 0, 14641],
        "f_values": [],
        "created_unix": 0
    });
    fs::write(dir.path().join("instances.jsonl"), format!("{bogus}\n")).unwrap();
    let mut args = vec!["zeta"];
    args.extend(EXAMPLE);
    let o = hfq(&args, Some(dir.path()));
    assert_eq!(lines(&o)[0]["lpoly"][1], 12);
}

#[test]
fn refutations_exit_nonzero() {
    // a record with the current schema version but doctored counts
    let dir = tempfile::tempdir().unwrap();
    let doctored = json!({
        "schema_version": 1,
        "key": {"l": 3, "exponents": [1, 2, 1], "q": 7, "z": 3},
        "counts": [5, 49],
        "lpoly": [1, -1, 0, -7, 49],
        "f_values": [],
        "created_unix": 0
    });
    fs::write(dir.path().join("instances.jsonl"), format!("{doctored}\n")).unwrap();
    let args = ["verify", "conjecture", "--l", "3", "--q", "7", "--z", "3"];
    let o = hfq(&args, Some(dir.path()));
    assert_eq!(code(&o), 1);
    let r = &lines(&o)[0];
    assert_valid("report", r);
    assert_eq!(r["status"], "refuted");
    assert_eq!(code(&hfq(&args, None)), 0);
}

#[test]
fn verify_commands() {
    let o = hfq(&["verify", "conjecture", "--l", "3", "--q", "7", "--z", "all"], None);
    assert_eq!(code(&o), 0);
    let rs = lines(&o);
    assert_eq!(rs.len(), 5);
    for r in &rs {
        assert_valid("report", r);
        assert!(r["witness"].get("pairing").is_none());
    }

    let o = hfq(&["verify", "conjecture", "--l", "5", "--m", "2", "--s", "3", "--q", "11", "--z", "3", "--show-pairing"], None);
    assert_eq!(code(&o), 0);
    let pairing = lines(&o)[0]["witness"]["pairing"].as_array().unwrap().clone();
    assert_eq!(pairing.len(), 4);
    let fs: Vec<&Value> = pairing.iter().map(|p| &p["f"]["coeffs"]).collect();
    let want = [json!([4, 0, 2, 2]), json!([2, 0, -2, -2])];
    assert!(fs.iter().all(|f| want.contains(f)));

    for args in [
        vec!["verify", "l3-suite", "--q", "13", "--z", "all"],
        vec!["verify", "l5-split", "--q", "11", "--z", "3"],
        vec!["verify", "koike", "--p", "17"],
        vec!["verify", "ono", "--p", "11"],
        vec!["verify", "theorem1", "--l", "5", "--q", "11", "--z", "4", "--k", "2"],
        vec!["verify", "partial", "--l", "7", "--q", "29", "--z", "5", "--k-max", "2"],
        vec!["verify", "relations", "--l", "5", "--q", "11", "--z", "2", "--n", "2"],
    ] {
        let o = hfq(&args, None);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        for r in lines(&o) {
            assert_valid("report", &r);
            assert_eq!(r["status"], "verified", "{args:?}");
        }
    }
    assert_eq!(code(&hfq(&["verify", "frobenius", "--q", "7"], None)), 2);
}

#[test]
fn scan_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = |name: &str| dir.path().join(name);
    let run = |jobs: &str, name: &str, policy: &str| {
        let path = out(name);
        let o = hfq(
            &[
                "scan", "--l", "3", "--q-max", "40", "--z-policy", policy,
                "--checks", "conjecture,theorem1,l3-suite", "--jobs", jobs,
                "--out", path.to_str().unwrap(),
            ],
            None,
        );
        assert_eq!(code(&o), 0);
        fs::read(path).unwrap()
    };
    let one = run("1", "a.jsonl", "all");
    let four = run("4", "b.jsonl", "all");
    assert_eq!(one, four);
    let s1 = run("2", "c.jsonl", "sample:5:seed42");
    let s2 = run("3", "d.jsonl", "sample:5:seed42");
    assert_eq!(s1, s2);
    assert_ne!(s1, run("1", "e.jsonl", "sample:5:seed43"));

    let text = String::from_utf8(one).unwrap();
    for l in text.lines() {
        let v: Value = serde_json::from_str(l).unwrap();
        assert_valid("report", &v);
        assert!(v.get("wall_ms").is_none());
    }

    let csv = out("s.csv");
    let o = hfq(
        &["scan", "--l", "5", "--q-max", "11", "--checks", "conjecture", "--csv", csv.to_str().unwrap()],
        None,
    );
    assert_eq!(code(&o), 0);
    let body = fs::read_to_string(csv).unwrap();
    let mut rows = body.lines();
    assert_eq!(rows.next(), Some("l,q,z,check,status,wall_ms"));
    assert_eq!(rows.count(), 9);
    assert_eq!(code(&hfq(&["scan", "--l", "3", "--q-max", "20", "--z-policy", "every"], None)), 2);
}
