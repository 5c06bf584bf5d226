macro_rules! example {
    ($m:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $m {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(finite_fields, "finite_fields.rs");
example!(cyclotomic, "cyclotomic.rs");
example!(hypergeometric, "hypergeometric.rs");
example!(point_counts, "point_counts.rs");
example!(zeta_polynomial, "zeta_polynomial.rs");
example!(conjecture, "conjecture.rs");
example!(elliptic_l3, "elliptic_l3.rs");
example!(jacobian_split_l5, "jacobian_split_l5.rs");
example!(scan, "scan.rs");
example!(cli, "cli.rs");

#[test]
fn finite_fields_example_runs() {
    finite_fields::run_example().unwrap();
}

#[test]
fn cyclotomic_example_runs() {
    cyclotomic::run_example().unwrap();
}

#[test]
fn hypergeometric_example_runs() {
    hypergeometric::run_example().unwrap();
}

#[test]
fn point_counts_example_runs() {
    point_counts::run_example().unwrap();
}

#[test]
fn zeta_polynomial_example_runs() {
    zeta_polynomial::run_example().unwrap();
}

#[test]
fn conjecture_example_runs() {
    conjecture::run_example().unwrap();
}

#[test]
fn elliptic_l3_example_runs() {
    elliptic_l3::run_example().unwrap();
}

#[test]
fn jacobian_split_l5_example_runs() {
    jacobian_split_l5::run_example().unwrap();
}

#[test]
fn scan_example_runs() {
    scan::run_example().unwrap();
}

#[test]
fn cli_example_runs() {
    cli::run_example().unwrap();
}
