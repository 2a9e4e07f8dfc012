use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use coulomb_cli::{from_json, TheoryFile};
use coulomb_core::monopole::{hilbert, Refine};

fn theory(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../theories")
        .join(name)
}

fn coulomb(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coulomb"));
    cmd.args(args);
    for var in [
        "COULOMB_CUTOFF",
        "COULOMB_REFINE",
        "COULOMB_FORMAT",
        "COULOMB_WORKERS",
        "COULOMB_LAMBDA_F",
    ] {
        cmd.env_remove(var);
    }
    cmd.env_remove("COULOMB_RADIUS_OVERRIDE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    theory(name).display().to_string()
}

#[test]
fn sqcd_n4_matches_closed_form() {
    // (1 - t^8) / ((1 - t^2)(1 - t^4)^2) by long division on coefficient lists
    let cutoff = 20;
    let mut c = vec![0i64; cutoff + 1];
    c[0] = 1;
    c[8] = -1;
    for d in [2, 4, 4] {
        for e in d..=cutoff {
            c[e] += c[e - d];
        }
    }
    let o = coulomb(
        &[
            "hilbert",
            &path("sqcd_u1_n4.json"),
            "--cutoff",
            "20",
            "--format",
            "json",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let s = from_json(&stdout(&o)).unwrap();
    let got: Vec<i64> = s
        .integer_coeffs()
        .unwrap()
        .into_iter()
        .map(|b| i64::try_from(b).unwrap())
        .collect();
    assert_eq!(got, c);
}

#[test]
fn bad_theory_is_refused() {
    let o = coulomb(&["classify", &path("pure_su2.json")], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).trim(), "Bad, witness λ=1, 2Δ=-4");
    let o = coulomb(&["hilbert", &path("pure_su2.json")], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("witness λ=1"));
}

#[test]
fn classify_verdicts() {
    let o = coulomb(&["classify", &path("taub_nut.json")], &[]);
    assert!(stdout(&o).starts_with("Ugly"));
    let o = coulomb(&["classify", &path("sqcd_u1_n4.json")], &[]);
    assert!(stdout(&o).starts_with("Good"));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn empty_gauge_group() {
    let o = coulomb(&["hilbert", &path("empty_gauge.json")], &[]);
    assert_eq!(stdout(&o).trim(), "1 + O(t^21)");
}

#[test]
fn json_output_round_trips() {
    let file = theory("taub_nut.json");
    let o = coulomb(
        &["hilbert", file.to_str().unwrap(), "--format", "json"],
        &[],
    );
    let parsed = from_json(&stdout(&o)).unwrap();
    let th = TheoryFile::load(&file).unwrap().theory().unwrap();
    let direct = hilbert(
        &th,
        10,
        &Refine {
            pi1: true,
            lambda_f: None,
        },
        None,
    )
    .unwrap();
    assert_eq!(parsed, direct);
}

#[test]
fn output_independent_of_workers() {
    let p = path("u3_adjoint.json");
    let one = coulomb(&["hilbert", &p, "--cutoff", "10", "--workers", "1"], &[]);
    let four = coulomb(
        &["hilbert", &p, "--cutoff", "10"],
        &[("COULOMB_WORKERS", "4")],
    );
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn option_precedence() {
    let p = path("taub_nut.json");
    let file = coulomb(&["hilbert", &p, "--refine", "false"], &[]);
    assert!(stdout(&file).ends_with("O(t^11)\n"));
    let env = coulomb(
        &["hilbert", &p, "--refine", "false"],
        &[("COULOMB_CUTOFF", "3")],
    );
    assert_eq!(stdout(&env).trim(), "1 + 2*t + 3*t^2 + 4*t^3 + O(t^4)");
    let flag = coulomb(
        &["hilbert", &p, "--cutoff", "2"],
        &[("COULOMB_CUTOFF", "3"), ("COULOMB_REFINE", "false")],
    );
    assert_eq!(stdout(&flag).trim(), "1 + 2*t + 3*t^2 + O(t^3)");
    let dflt = coulomb(&["hilbert", &path("sqcd_u1_n4.json")], &[]);
    assert!(stdout(&dflt).ends_with("O(t^21)\n"));
}

#[test]
fn schema_errors_exit_one() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"schema_version": 1, "name": "x", "colour": 3, "matter": {{"builder": "so_instanton", "n": 3, "k": 1}}}}"#
    )
    .unwrap();
    let o = coulomb(&["hilbert", f.path().to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
}

#[test]
fn glue_and_checks() {
    let p = path("split_pair.json");
    let o = coulomb(&["glue", &p, &p, "--cutoff", "4"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let o = coulomb(
        &[
            "abelian-ring",
            &path("abelian_rank2.json"),
            "--cutoff",
            "8",
            "--check",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let o = coulomb(
        &[
            "motivic-check",
            &path("u3_adjoint.json"),
            "--box",
            "1",
            "--deg-m1",
            "-1",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("checked 10 coweights, 0 mismatches"));
    let o = coulomb(
        &[
            "symprod-check",
            "--N",
            "1",
            "--order-t",
            "8",
            "--order-lambda",
            "3",
            "--qbinomial",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn csv_rows() {
    let o = coulomb(
        &[
            "hilbert",
            &path("taub_nut.json"),
            "--cutoff",
            "1",
            "--format",
            "csv",
        ],
        &[],
    );
    assert_eq!(
        stdout(&o),
        "t_exp,fugacity,coefficient\n0,1,1\n1,z1^-1,1\n1,z1,1\n"
    );
}
