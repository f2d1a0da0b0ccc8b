use std::process::{Command, Output};

const OMEGA_B: &str = "x^2*y^2+x*y^2*x+y^2*x^2+y*x^2*y-2*x*y*x*y-2*y*x*y*x";

fn ncaseed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncaseed"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn check_tsp_accepts_omega_b() {
    let o = ncaseed(&["check-tsp", "-e", OMEGA_B]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("[pass]"), "{s}");
    assert!(s.contains("theta = [[1,0],[0,1]]"), "{s}");
}

#[test]
fn check_tsp_rejects_non_potential() {
    let o = ncaseed(&["check-tsp", "-e", "x^2*y^2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn table_two_passes() {
    let o = ncaseed(&["tables", "--id", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("5/5 rows pass"), "{s}");
}

#[test]
fn fl1_instances_are_isomorphic() {
    let o = ncaseed(&["iso", "--type", "FL1", "--lhs", "a=2", "--rhs", "a=-1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("isomorphic"), "{s}");
    assert!(s.contains("witness: rho = "), "{s}");

    let o = ncaseed(&["iso", "--type", "FL1", "--lhs", "a=2", "--rhs", "a=3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not isomorphic"));
}

#[test]
fn different_types_are_not_isomorphic() {
    let o = ncaseed(&[
        "iso",
        "--type",
        "FL1",
        "--rhs-type",
        "FL2",
        "--lhs",
        "a=2",
        "--rhs",
        "a=1,b=-1",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn morita_sequences_verify() {
    let o = ncaseed(&[
        "morita",
        "--type",
        "FL2",
        "--lhs",
        "a=1,b=3",
        "--rhs",
        "a=3,b=1",
        "--sequences",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("6/6 rows pass"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["iso", "--type", "FL1", "--lhs", "a=alpha", "--rhs", "a=1"],
        vec!["iso", "--type", "Q7", "--lhs", "a=1", "--rhs", "a=1"],
        vec!["iso", "--type", "FL2", "--lhs", "a=1", "--rhs", "a=1,b=1"],
        vec!["check-tsp", "-e", "x*y"],
        vec!["check-tsp", "-e", "x^2*y^2 +"],
        vec!["check-tsp", "-e", "a*x^4"],
        vec!["tables", "--id", "9"],
        vec!["asreg", "--rel", "x^2*y"],
        vec!["derive", "/nonexistent.pair"],
        vec!["frobnicate"],
    ] {
        assert_eq!(ncaseed(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn symbolic_flag_admits_parameters() {
    let o = ncaseed(&[
        "check-tsp",
        "--symbolic",
        "--assume",
        "a != 0",
        "-e",
        "a*x^2*y^2 + a*y^2*x^2 + a*x*y^2*x + a*y*x^2*y",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn derive_from_pair_spec() {
    let o = ncaseed(&["derive", &data("fl.pair")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("-(1/(alpha))*x^2*y + y*x^2"), "{s}");

    let o = ncaseed(&["-v", "derive", &data("sprime.pair")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("assuming alpha = 1"));
}

#[test]
fn g2_membership_by_branch() {
    let spec = data("fl.pair");
    let o = ncaseed(&["g2", &spec, "-e", "-x^2*y + alpha*y*x^2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = ncaseed(&["g2", &spec, "-e", "x*y^2 - y^2*x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[pass] x*y^2 - y^2*x [beta = 1"));
}

#[test]
fn wl_checks_pass() {
    let o = ncaseed(&["wl", "--alpha", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("5/5 rows pass"));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "tables", "--id", "1"];
    let first = ncaseed(&args);
    assert_eq!(first.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["table"], "1");
    assert_eq!(v["rows"].as_array().unwrap().len(), 7);
    for key in [
        "table",
        "row",
        "status",
        "details",
        "assumptionsUsed",
        "witnesses",
    ] {
        assert!(v["rows"][0].get(key).is_some(), "{key}");
    }
    for threads in ["1", "3"] {
        let again = Command::new(env!("CARGO_BIN_EXE_ncaseed"))
            .args(args)
            .env("NCASEED_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(again.stdout, first.stdout);
    }
}
