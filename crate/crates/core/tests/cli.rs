use std::process::{Command, Output};

fn symtwist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symtwist"))
        .args(args)
        .env_remove("SYMTWIST_OUT_DIR")
        .output()
        .expect("binary runs")
}

#[test]
fn degrees_table_ends_with_total() {
    let out = symtwist(&["degrees", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with("total 76"));
}

#[test]
fn exit_code_contract() {
    assert_eq!(symtwist(&["verify-all", "--n-max", "6"]).status.code(), Some(0));
    let usage = symtwist(&["fibers", "search", "--n", "3", "--fix-top"]);
    assert_eq!(usage.status.code(), Some(2));
    assert!(!usage.stderr.is_empty());
    assert_eq!(symtwist(&["twisted", "count", "--n", "5", "--auto", "id:6"]).status.code(), Some(2));
    assert_eq!(symtwist(&["rsk", "--perm", "[1,1]"]).status.code(), Some(2));
    assert_eq!(symtwist(&["fibers", "search", "--n", "7", "--fix-top", "--fix-second"]).status.code(), Some(1));
}

#[test]
fn json_count_schema() {
    let out = symtwist(&["twisted", "count", "--n", "6", "--auto", "outer6:p1:o23456", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 36);
    assert_eq!(v["T"], 76);
    assert_eq!(v["bound_ok"], true);
    assert_eq!(v["equality"], false);
}

#[test]
fn output_independent_of_thread_count() {
    for args in [
        &["twisted", "verify-bound", "--n", "7", "--format", "json"][..],
        &["fibers", "search", "--n", "9", "--fix-top", "--format", "csv"][..],
        &["sweep-outer6"][..],
    ] {
        let outputs: Vec<Vec<u8>> = ["1", "2", "8"]
            .iter()
            .map(|k| {
                let mut full = vec!["--parallel", k];
                full.extend_from_slice(args);
                symtwist(&full).stdout
            })
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}

#[test]
fn reports_are_appended_not_clobbered() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    for _ in 0..2 {
        let out = symtwist(&["--out", out_dir, "--format", "json", "involutions", "--n", "8"]);
        assert_eq!(out.status.code(), Some(0));
    }
    symtwist(&["--out", out_dir, "--format", "csv", "involutions", "--n", "8"]);
    let names: Vec<String> =
        std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert_eq!(names.len(), 2);
    assert!(names.iter().all(|n| n.starts_with("involutions_n-8_")));

    let env_dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_symtwist"))
        .args(["degrees", "--n", "5"])
        .env("SYMTWIST_OUT_DIR", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 1);
}

#[test]
fn rsk_prints_both_tableaux() {
    let out = symtwist(&["rsk", "--perm", "[2,1,3]"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "P\n[1,3]\n[2]\nQ\n[1,3]\n[2]\n");
}
