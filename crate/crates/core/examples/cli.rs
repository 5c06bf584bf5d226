// Driving the command line from code; output is JSON lines.

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    let code = hfq::cli::run(
        ["hfq", "zeta", "--l", "5", "--m", "2", "--s", "3", "--q", "11", "--z", "3"],
        &mut out,
    );
    print!("{}", String::from_utf8(out)?);
    if code != 0 {
        return Err(format!("exit code {code}").into());
    }
    let mut out = Vec::new();
    let code = hfq::cli::run(["hfq", "verify", "koike", "--p", "11"], &mut out);
    print!("{}", String::from_utf8(out)?);
    assert_eq!(code, 0);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("cli example failed");
}
