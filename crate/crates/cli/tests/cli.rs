use std::process::{Command, Output};

use qkchev::{Family, SchubertCombo, WeylElement};

fn qkchev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkchev"))
        .args(args)
        .env_remove("QKCHEV_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn type_c_chain_levels_and_split() {
    let o = qkchev(&["chain", "--family", "C", "--n", "2", "--k", "2", "--format", "tsv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 4);
    let levels: Vec<&str> = rows.iter().map(|r| r[2]).collect();
    assert_eq!(levels, ["1", "1", "2", "1"]);
    let halves: Vec<&str> = rows.iter().map(|r| r[4]).collect();
    assert_eq!(halves, ["1", "2", "2", "2"]);
}

#[test]
fn grassmannian_theta_branch_as_json() {
    let o = qkchev(&["product", "--space", "grass", "--family", "A", "--n", "2", "--k", "1", "--w", "2 1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["label"], "GrassA_theta");
    let combo = SchubertCombo::from_json(&v).unwrap();
    assert_eq!(combo.len(), 2);
    let e = WeylElement::identity(Family::A, 2);
    let q1 = qkchev::NovikovMonomial::q(1);
    assert_eq!(combo.coeff(&e, &q1).to_string(), "-e^(-1,0)");
}

#[test]
fn verify_exit_codes() {
    let o = qkchev(&["verify", "--suite", "twostepA", "--n", "4", "--format", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("family\tn\tk\tw\tlabel\t|A|\t|A_lessdot|\tmatch\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with("\ttrue")));

    let o = qkchev(&["verify", "--suite", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn jobs_from_environment_do_not_change_output() {
    let base = qkchev(&["verify", "--suite", "grassC", "--n", "3"]);
    let env = Command::new(env!("CARGO_BIN_EXE_qkchev"))
        .args(["verify", "--suite", "grassC", "--n", "3"])
        .env("QKCHEV_JOBS", "1")
        .output()
        .unwrap();
    assert_eq!(base.status.code(), Some(0));
    assert_eq!(base.stdout, env.stdout);
}

#[test]
fn usage_errors_exit_two() {
    let non_minimal = qkchev(&["product", "--space", "grass", "--family", "A", "--n", "3", "--k", "1", "--w", "1 3 2"]);
    assert_eq!(non_minimal.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&non_minimal.stderr).contains("minimal coset"));

    let bad_format = qkchev(&["chain", "--family", "A", "--n", "3", "--k", "1", "--format", "dot"]);
    assert_eq!(bad_format.status.code(), Some(2));

    let missing_target = qkchev(&["product", "--space", "twostep", "--family", "A", "--n", "4", "--k1", "1", "--k2", "3", "--w", "1 2 3 4"]);
    assert_eq!(missing_target.status.code(), Some(2));

    let bad_window = qkchev(&["product", "--family", "A", "--n", "3", "--k", "1", "--w", "1 1 2"]);
    assert_eq!(bad_window.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["qbg", "--family", "C", "--n", "2", "--format", "dot"][..],
        &["enumerate", "--family", "C", "--n", "3", "--k", "2", "--w", "-1 2 3", "--format", "json"][..],
        &["product", "--family", "A", "--n", "4", "--k", "2", "--w", "4 3 1 2"][..],
    ] {
        let a = qkchev(args);
        let b = qkchev(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn enumerate_reports_statistics() {
    let o = qkchev(&["enumerate", "--family", "A", "--n", "3", "--k", "1", "--w", "2 1 3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 4);
    assert_eq!(v["bruhat_only"], 2);
    assert_eq!(v["subsets"][0]["indices"], serde_json::json!([]));
}
