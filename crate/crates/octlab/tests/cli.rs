use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use octlab::{Report, Verdict};

fn octlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octlab")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn report(path: &Path) -> Report {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn computed<'a>(r: &'a Report, id: &str) -> &'a serde_json::Value {
    &r.records.iter().find(|x| x.id == id).unwrap_or_else(|| panic!("no record {id}")).computed
}

#[test]
fn build_writes_reproducible_cache_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(code(&octlab(&["build", "--n", "2", "--sign", "plus", "--cache-dir", d])), 0);
    assert_eq!(code(&octlab(&["build", "--n", "1", "--sign", "minus", "--cache-dir", d])), 0);
    let plus = dir.path().join("herm_plus_n2_q.oct");
    let text = fs::read_to_string(&plus).unwrap();
    assert!(text.lines().any(|l| l == "dim 10"));
    let labels = text.lines().find_map(|l| l.strip_prefix("labels ")).unwrap();
    assert_eq!(labels.split_whitespace().count(), 10);
    let minus = fs::read_to_string(dir.path().join("herm_minus_n1_q.oct")).unwrap();
    assert!(minus.lines().any(|l| l == "dim 7"));

    assert_eq!(code(&octlab(&["build", "--n", "2", "--sign", "plus", "--cache-dir", d])), 0);
    assert_eq!(fs::read_to_string(&plus).unwrap(), text);
}

#[test]
fn checks_read_the_cache_and_reject_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = dir.path().join("r.json");
    let o = out.to_str().unwrap();
    assert_eq!(code(&octlab(&["check", "dims", "--n", "2", "--cache-dir", d, "--out", o])), 0);
    let file = dir.path().join("herm_minus_n2_q.oct");
    assert!(file.exists());
    assert_eq!(code(&octlab(&["check", "dims", "--n", "2", "--cache-dir", d, "--out", o])), 0);
    let text = fs::read_to_string(&file).unwrap();
    fs::write(&file, text.replace("dim 22", "dim 21")).unwrap();
    assert_eq!(code(&octlab(&["check", "dims", "--n", "2", "--cache-dir", d, "--out", o])), 2);
}

#[test]
fn dims_at_four() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = octlab(&["check", "dims", "--n", "4", "--sign", "both", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert_eq!(computed(&r, "dims/plus/n4")["dim"], 52);
    assert_eq!(computed(&r, "dims/minus/n4")["dim"], 76);
    assert!(r.records.iter().all(|x| x.verdict == Verdict::Pass));
    assert_eq!(r.config["n"], 4);
    assert!(r.config["seed"].is_u64());
}

#[test]
fn scan_is_nonzero_only_at_one_and_half() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = octlab(&["check", "scan", "--n", "2", "--sign", "minus", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    for d in ["0", "-1", "2", "3", "-1/2"] {
        assert_eq!(computed(&r, &format!("scan/minus/n2/delta={d}")), 0);
    }
    assert_eq!(computed(&r, "scan/minus/n2/delta=1"), 15);
    assert_eq!(computed(&r, "scan/minus/n2/delta=1/2"), 1);
}

#[test]
fn forms_for_the_albert_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = octlab(&["check", "forms", "--n", "3", "--sign", "plus", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert_eq!(computed(&r, "forms/plus/n3/space")["dim"], 1);
    assert_eq!(computed(&r, "forms/plus/n3/space")["nondegenerate"][0], true);
    assert_eq!(computed(&r, "forms/plus/n3/trace-form")["proportional"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&octlab(&["check", "scan", "--n", "2", "--delta", "0.5"])), 2);
    assert_eq!(code(&octlab(&["check", "dims", "--n", "9", "--max-n", "8"])), 2);
    assert_eq!(code(&octlab(&["check", "dims", "--n", "0"])), 2);
    assert_eq!(code(&octlab(&["check", "dims", "--n", "5"])), 3);
    assert_eq!(code(&octlab(&["check", "dims", "--field", "fp:3"])), 2);
    assert_eq!(code(&octlab(&["check", "dims", "--field", "fp:2", "--exploratory-char3"])), 2);
    assert_eq!(code(&octlab(&["check", "dims", "--field", "fp:9"])), 2);
    assert_eq!(code(&octlab(&["check", "bogus"])), 2);
    assert_eq!(code(&octlab(&["check", "dims", "--primes", "5,7"])), 2);
    assert_eq!(code(&octlab(&["check", "dims", "--budget-secs", "0"])), 3);
    assert_eq!(code(&octlab(&["report", "/nonexistent/report.json"])), 2);
}

#[test]
fn exploratory_characteristic_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = octlab(&["build", "--n", "2", "--field", "fp:3", "--exploratory-char3", "--cache-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("herm_minus_n2_fp3.oct").exists());
}

#[test]
fn larger_orders_need_a_raised_ceiling() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = octlab(&["check", "dims", "--n", "5", "--max-n", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(computed(&report(&out), "dims/minus/n5")["dim"], 115);
}

#[test]
fn falsified_claims_exit_one_and_report_the_record() {
    // the commutator lemma does not survive n = 2 at delta = -1
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = octlab(&["check", "lemmas", "--n", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("first failure: lemmas/n2/xdm/-1"));
    let r = report(&out);
    assert_eq!(r.first_failure().unwrap().computed["solutions"], 3);
    assert_eq!(code(&octlab(&["report", out.to_str().unwrap()])), 1);
}

#[test]
fn reports_are_deterministic_across_runs_and_workers() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, workers: &str| {
        let out = dir.path().join(name);
        let o = octlab(&[
            "check", "products", "simplicity", "octonion", "identities", "--n", "2", "--seed", "11", "--law-cases", "100",
            "--product-trials", "50", "--workers", workers, "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        report(&out).without_timings()
    };
    let a = run("a.json", "1");
    assert_eq!(a, run("b.json", "1"));
    assert_eq!(a.records, run("c.json", "3").records);
    assert!(a.records.iter().all(|r| !r.anchor.is_empty()));
    assert_eq!(code(&octlab(&["report", dir.path().join("a.json").to_str().unwrap()])), 0);
}
