use std::process::{Command, Output};

use cyclotome::cli::{Classification, RunReport, Verdict};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclotome"))
        .args(args)
        .output()
        .expect("spawn cyclotome")
}

fn reports(out: &Output) -> Vec<RunReport> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn dist(report: &RunReport) -> Vec<(u64, &str)> {
    report
        .distribution
        .iter()
        .map(|(w, f)| (*w, f.as_str()))
        .collect()
}

const GF49: [&str; 8] = ["--p", "7", "--s", "1", "--m", "2", "--h", "3"];
const GF64: [&str; 8] = ["--p", "2", "--s", "2", "--m", "3", "--h", "3"];

#[test]
fn compute_table_and_brute() {
    let expected = vec![
        (0, "1"),
        (12, "72"),
        (16, "72"),
        (18, "264"),
        (20, "864"),
        (22, "864"),
        (24, "264"),
    ];
    for method in ["table", "brute", "semi"] {
        let out = run(&[&["compute"], &GF49[..], &["--method", method]].concat());
        assert_eq!(out.status.code(), Some(0));
        let r = reports(&out).remove(0);
        assert_eq!(r.method, method);
        assert_eq!(r.params.n, 24);
        assert_eq!(r.params.n_classes, 2);
        assert!(
            matches!(&r.classification, Classification::Applicable { case, .. } if case == "2.1")
        );
        assert_eq!(dist(&r), expected);
    }
    let text =
        String::from_utf8(run(&[&["compute"], &GF49[..], &["--method", "table"]].concat()).stdout)
            .unwrap();
    assert!(text.contains("\"distribution\":[[0,\"1\"],[12,\"72\"]"));
}

#[test]
fn compute_all_emits_one_line_per_method() {
    let out = run(&[&["compute"], &GF64[..], &["--method", "all"]].concat());
    assert_eq!(out.status.code(), Some(0));
    let rs = reports(&out);
    assert_eq!(
        rs.iter().map(|r| r.method.as_str()).collect::<Vec<_>>(),
        ["brute", "semi", "table"]
    );
    assert!(rs.iter().all(|r| r.distribution == rs[0].distribution));
    assert!(rs[0].distribution.contains(&(36, "252".to_string())));
}

#[test]
fn bad_parameters_exit_2() {
    let out = run(&["compute", "--p", "5", "--s", "1", "--m", "2", "--h", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("h = 3"));
    assert_eq!(
        run(&["compute", "--p", "6", "--m", "2", "--h", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["compute", "--p", "7"]).status.code(), Some(2));
    assert_eq!(
        run(&[&["compute"], &GF49[..], &["--poly", "1,1,1"]].concat())
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn budget_exit_3() {
    let out = run(&[&["compute"], &GF49[..], &["--budget", "1000"]].concat());
    assert_eq!(out.status.code(), Some(3));
    let out = run(&[&["verify"], &GF64[..], &["--budget", "1000"]].concat());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn not_applicable_is_reported() {
    let out = run(&[
        "compute", "--p", "13", "--m", "4", "--h", "3", "--method", "table",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = reports(&out).remove(0);
    assert!(
        matches!(&r.classification, Classification::NotApplicable { reason } if reason.contains("no j"))
    );
    assert!(r.distribution.is_empty());
    let out = run(&["verify", "--p", "13", "--m", "4", "--h", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_on_desk_sets() {
    for set in [GF49, GF64] {
        let out = run(&[&["verify"], &set[..]].concat());
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stdout)
        );
        let r = reports(&out).remove(0);
        assert_eq!(r.verdict, Some(Verdict::Pass));
        assert!(r.checks.len() >= 10);
        assert!(r.checks.iter().all(|c| c.passed));
    }
}

#[test]
fn injected_fault_exit_1() {
    for set in [GF49, GF64] {
        let out = run(&[&["verify"], &set[..], &["--inject-table-fault"]].concat());
        assert_eq!(out.status.code(), Some(1));
        let r = reports(&out).remove(0);
        assert_eq!(r.verdict, Some(Verdict::Fail));
        let bad: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
        assert_eq!(bad.len(), 2, "{bad:?}");
        assert!(bad.iter().all(|c| c
            .detail
            .as_ref()
            .unwrap()
            .contains("first difference at weight")));
    }
}

#[test]
fn sweep_includes_desk_sets() {
    let out = run(&["sweep", "--max-r", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let rs = reports(&out);
    let gf49 = rs
        .iter()
        .find(|r| (r.params.p, r.params.s, r.params.m, r.params.h) == (7, 1, 2, 3))
        .unwrap();
    assert_eq!(gf49.verdict, Some(Verdict::Pass));
    let na = rs
        .iter()
        .find(|r| r.verdict == Some(Verdict::NotApplicable))
        .unwrap();
    assert!(
        matches!(&na.classification, Classification::NotApplicable { reason } if !reason.is_empty())
    );

    let out = run(&[
        "sweep", "--max-r", "5000", "--budget", "1000000", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,s,m,h,e,q,r,n,N,classification,verdict,detail,elapsed_ms"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let find = |key: [&str; 4]| rows.iter().find(|r| r[..4] == key).unwrap();
    assert_eq!(find(["2", "2", "3", "3"])[10], "PASS");
    assert_eq!(find(["13", "1", "2", "3"])[9], "1.1");
    assert!(rows.iter().all(|r| r[10] != "FAIL" && r[10] != "ERROR"));
}

#[test]
fn sweep_output_is_ordered_and_threads_env_respected() {
    let out = Command::new(env!("CARGO_BIN_EXE_cyclotome"))
        .args(["sweep", "--max-r", "300", "--budget", "0"])
        .env("CYCLOTOME_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let keys: Vec<_> = reports(&out)
        .iter()
        .map(|r| (r.params.p, r.params.s, r.params.m, r.params.h))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn pretty_and_csv_formats() {
    let out = run(&[&["verify"], &GF49[..], &["--format", "pretty"]].concat());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("case 2.1"));
    assert!(text.contains("verdict: PASS"));
    let out = run(&[
        &["compute"],
        &GF64[..],
        &["--method", "table", "--format", "csv"],
    ]
    .concat());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("table,2,2,3,3,3,36,252"));
}

#[test]
fn poly_override() {
    // x² + x + 3 is primitive over GF(7)
    let out = run(&[&["compute"], &GF49[..], &["--poly", "3,1,1"]].concat());
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let base = run(&[&["compute"], &GF49[..]].concat());
    assert_eq!(
        reports(&out)[0].distribution,
        reports(&base)[0].distribution
    );
}
