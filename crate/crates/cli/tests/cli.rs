use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.morse"))
}

fn rotknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotknot")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    corpus(name).display().to_string()
}

#[test]
fn bracket_of_unknot() {
    let o = rotknot(&["bracket", &path("unknot")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn raw_rotational_bracket() {
    let o = rotknot(&["rot-bracket", "--raw", &path("flat-clasp")]);
    assert_eq!(stdout(&o).trim(), "(A^2 + B^2 + A B) d + A B d0^2");
    let flat = rotknot(&["rot-bracket", "--flat", &path("flat-clasp")]);
    assert!(flat.status.success());
    assert!(stdout(&flat).contains("d0^2"));
}

#[test]
fn json_embeds_hash_and_invariant() {
    let o = rotknot(&["--json", "binary", &path("trefoil")]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["invariant"], "binary");
    assert_eq!(v["value"], "2 A^3");
    assert_eq!(v["diagram"].as_str().unwrap().len(), 16);
}

#[test]
fn homflypt_and_orientation() {
    let up = rotknot(&["homflypt", "-n", "1", &path("hopf-link")]);
    let down = rotknot(&["homflypt", "-n", "1", "--orient", "1=↓", &path("hopf-link")]);
    assert!(up.status.success() && down.status.success());
    // reversing one component of the Hopf link changes its linking sign
    assert_ne!(stdout(&up), stdout(&down));
    let bad = rotknot(&["homflypt", "--orient", "7=up", &path("hopf-link")]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn trace_and_simplify() {
    let t = rotknot(&["trace", &path("virtual-trefoil-drawn")]);
    assert_eq!(stdout(&t).trim(), "TR[s^3(x8') s^4(x7) s^5(x8) s^6(x7') G^2]");
    let s = rotknot(&["simplify", &path("L3")]);
    assert!(stdout(&s).contains("unlink form"));
    let s = rotknot(&["simplify", &path("L2")]);
    assert!(stdout(&s).contains("not reduced"));
}

#[test]
fn other_subcommands_run() {
    for args in [
        vec!["f", "--flat"],
        vec!["parity"],
        vec!["genus"],
        vec!["quantum", "--model", "homflypt-2"],
        vec!["binary", "--normalized"],
    ] {
        let mut a = args.clone();
        let p = path("virtual-trefoil");
        a.push(&p);
        let o = rotknot(&a);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!stdout(&o).trim().is_empty());
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(rotknot(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(rotknot(&["bracket", "/no/such/file"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.morse");
    std::fs::write(&bad, "cup 0 / x+ 0").unwrap();
    assert_eq!(rotknot(&["bracket", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn broken_model_exits_1() {
    let shown = rotknot(&["quantum", "--model", "homflypt-1", "--show-model", &path("unknot")]);
    let mut v: serde_json::Value = serde_json::from_str(&stdout(&shown)).unwrap();
    // scale one cup entry: the zig-zag identity fails
    v["cup_left"]["entries"][0] = serde_json::Value::String("2 t^-1".into());
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("model.json");
    std::fs::write(&file, v.to_string()).unwrap();
    let o = rotknot(&["quantum", "--model", file.to_str().unwrap(), &path("unknot")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rejected"));
}

#[test]
fn corpus_run_passes() {
    let o = rotknot(&["corpus", "run"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("0 failed\n"));
    let j = rotknot(&["--json", "corpus", "run"]);
    for line in stdout(&j).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["entry", "invariant", "expected", "got", "pass"] {
            assert!(v.get(key).is_some(), "{line}");
        }
    }
}

#[test]
fn corpus_failure_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(corpus("unknot"), dir.path().join("unknot.morse")).unwrap();
    let manifest = r#"[{"name":"unknot","file":"unknot.morse","note":"wrong on purpose","expected":{"bracket":"A"}}]"#;
    std::fs::write(dir.path().join("manifest.json"), manifest).unwrap();
    let o = rotknot(&["corpus", "run", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn rotational_fuzz_on_l1() {
    let o = rotknot(&["fuzz", &path("L1"), "--iterations", "500", "--invariants", "rot-bracket"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("no violations"));
}

#[test]
fn vcurl_fuzz_on_unknot() {
    let o = rotknot(&["--json", "fuzz", &path("unknot"), "--class", "vcurl", "--iterations", "50", "--invariants", "bracket,rot-bracket"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["tallies"]["bracket"]["changed"], 0);
    assert!(v["tallies"]["rot-bracket"]["changed"].as_u64().unwrap() > 0);
}

#[test]
fn r1_fuzz_on_trefoil() {
    let o = rotknot(&["--json", "fuzz", &path("trefoil"), "--class", "r1", "--iterations", "50", "--len", "1", "--invariants", "bracket"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    // every single curl move changes the bracket by -A^3 or -A^-3
    assert_eq!(v["tallies"]["bracket"]["changed"], 50);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn fuzz_output_is_stable() {
    let args = ["fuzz", &path("virtual-trefoil"), "--iterations", "30", "--seed", "9"];
    let a = rotknot(&args);
    let b = rotknot(&args);
    assert_eq!(a.stdout, b.stdout);
}
