//! Golden-file tests for the worked examples. Set `UPDATE_GOLDEN=1` to rewrite
//! the expected files after an intentional output change.

use std::path::PathBuf;
use std::process::{Command, Output};

const GAUSSIAN: &str = "Q[x]/(x^2+1)";

fn denom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_denom"))
        .args(args)
        .env_remove("DENOM_SEED")
        .env_remove("DENOM_MAX_DEGREE")
        .env_remove("DENOM_EFFORT")
        .env_remove("DENOM_FORMAT")
        .output()
        .expect("run denom")
}

fn golden(name: &str, args: &[&str]) {
    let out = denom(args);
    assert!(
        out.status.success(),
        "{name}: exit {:?}\n{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    let got = String::from_utf8(out.stdout).expect("utf-8 output");
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).expect("write golden file");
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(got, want, "{name}: output differs from {}", path.display());
}

#[test]
fn invariants_of_half_gaussian() {
    golden("invariants_half_gaussian", &["invariants", "5*x^2-4*x+1"]);
}

#[test]
fn xy_of_half_gaussian_over_q() {
    golden("xy_half_gaussian_q", &["xy", "--field", GAUSSIAN, "--gamma", "1/(2+x)"]);
}

#[test]
fn xy_of_half_gaussian_over_gaussian_field() {
    golden(
        "xy_half_gaussian_qi",
        &["xy", "--field", GAUSSIAN, "--gamma", "1/(2+x)", "--subfield", "x"],
    );
}

#[test]
fn xy_of_sixty_fifteen() {
    golden(
        "xy_sixty_fifteen_qi",
        &["xy", "--field", GAUSSIAN, "--gamma", "1/(60+15*x)", "--subfield", "x"],
    );
}

#[test]
fn genset_of_sixty_fifteen() {
    golden(
        "genset_sixty_fifteen",
        &["genset", "--field", GAUSSIAN, "--gamma", "1/(60+15*x)", "--verify"],
    );
}

#[test]
fn tuple_check_unrealizable() {
    golden("tuple_check_4_2_1_2", &["tuple", "check", "4", "2", "1", "2"]);
}

#[test]
fn tuple_witness() {
    golden("tuple_witness_12_6_2_2", &["tuple", "witness", "12", "6", "2", "2"]);
}

#[test]
fn classgroup_of_sqrt_minus_five() {
    golden("classgroup_sqrt_minus_5", &["classgroup", "--field", "x^2+5"]);
}

#[test]
fn ring_of_half_in_sqrt_minus_five() {
    golden(
        "ring_sqrt_minus_5_half",
        &["ring", "--field", "x^2+5", "--gamma", "1/2", "--subfield", "x"],
    );
}

#[test]
fn same_denominator_pairs() {
    golden(
        "same_denom_conjugates",
        &["same-denom", "--field", GAUSSIAN, "--gamma", "1/(2+x)", "--other", "1/(2-x)"],
    );
    golden(
        "same_denom_associates",
        &["same-denom", "--field", GAUSSIAN, "--gamma", "1/(2+x)", "--other", "1/(3+4*x)"],
    );
}

#[test]
fn membership_of_one_fifth() {
    golden(
        "member_one_fifth_over_z",
        &["member", "--field", GAUSSIAN, "--gamma", "1/(2+x)", "--alpha", "1/5"],
    );
    golden(
        "member_one_fifth_over_gaussian",
        &["member", "--field", GAUSSIAN, "--gamma", "1/(2+x)", "--subfield", "x", "--alpha", "1/5"],
    );
}

#[test]
fn local_rings_above_five() {
    golden("local_half_gaussian", &["local", "--field", GAUSSIAN, "--gamma", "1/(2+x)"]);
}

#[test]
fn kernel_ideal_of_sixty_fifteen() {
    golden(
        "kernel_ideal_sixty_fifteen",
        &["kernel-ideal", "--field", GAUSSIAN, "--gamma", "1/(60+15*x)", "--subfield", "x"],
    );
}

#[test]
fn field_factor_of_sixty_fifteen() {
    golden("field_factor_sixty_fifteen", &["field", "factor", GAUSSIAN, "60+15*x"]);
}

#[test]
fn structured_output_is_deterministic() {
    let args = ["--format", "json", "genset", "--field", GAUSSIAN, "--gamma", "1/(60+15*x)"];
    let a = denom(&args);
    let b = denom(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    golden("genset_sixty_fifteen_json", &args);
}

#[test]
fn input_errors_exit_with_one() {
    let out = denom(&["xy", "--gamma", "1/(2+y)"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--gamma") && err.contains("position") && err.contains('y'), "{err}");

    let out = denom(&["invariants", "x^2-1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verification_failures_exit_with_two() {
    // 1/(2+i) is in Z[i][1/(2+i)], but not as a polynomial of degree 0
    let out = denom(&[
        "--max-degree",
        "0",
        "member",
        "--field",
        GAUSSIAN,
        "--gamma",
        "1/(2+x)",
        "--subfield",
        "x",
        "--alpha",
        "1/(2+x)",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.contains("consistent=false"), "{s}");
}

#[test]
fn flags_take_precedence_over_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_denom"));
        c.env_remove("DENOM_SEED");
        if let Some(v) = env {
            c.env("DENOM_SEED", v);
        }
        if let Some(v) = flag {
            c.args(["--seed", v]);
        }
        let out = c.args(["invariants", "2*x-1"]).output().expect("run denom");
        String::from_utf8(out.stdout).unwrap()
    };
    assert!(run(Some("7"), None).contains("seed=7"));
    assert!(run(Some("7"), Some("9")).contains("seed=9"));
    assert!(run(None, None).contains("seed=1"));
}

#[test]
fn quick_verify_suite_passes() {
    let out = denom(&["verify", "examples,classgroup", "--quick"]);
    let s = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{s}");
    assert!(s.contains("failures=0"));
}
