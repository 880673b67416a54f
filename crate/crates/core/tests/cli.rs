use std::process::Command;

use serde_json::{json, Value};

fn qinterp(args: &[&str], cache: &std::path::Path) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qinterp"))
        .args(args)
        .env("QINTERP_CACHE_DIR", cache)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_of(text: &str) -> Value {
    serde_json::from_str(text.trim()).unwrap()
}

#[test]
fn documented_invocations() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = qinterp(&["delta", "--q", "2", "--n", "2", "--symbolic"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(json_of(&out)["delta"], json!([["t-1", 4], ["t-2", 1]]));
    let (_, out, _) = qinterp(&["hom-dim", "--q", "2", "--dx", "1", "--dy", "1"], dir.path());
    assert_eq!(out.trim(), r#"{"q":2,"dx":1,"dy":1,"dim":5}"#);
    let (_, out, _) = qinterp(&["quotient-check", "--q", "2", "--r", "1", "--dx", "1", "--dy", "1"], dir.path());
    let v = json_of(&out);
    assert_eq!((&v["gram_rank"], &v["orbit_count"], &v["match"]), (&json!(4), &json!(4), &json!(true)));
    assert!(out.starts_with(r#"{"q":2,"r":1,"x":1,"y":1,"gram_rank":4,"orbit_count":4,"match":true"#));
}

#[test]
fn lattice_output_is_byte_stable_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let (c1, first, _) = qinterp(&["lattice", "--q", "2", "--n", "3"], dir.path());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let (c2, second, _) = qinterp(&["lattice", "--q", "2", "--n", "3"], dir.path());
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(first, second);
    assert_eq!(json_of(&first)["subspace_count"], json!(16));
    assert_eq!(json_of(&first)["by_dim"], json!([1, 7, 7, 1]));

    // a corrupt entry is replaced, with a warning
    let path = files[0].as_ref().unwrap().path();
    std::fs::write(&path, "garbage").unwrap();
    let (c3, third, err) = qinterp(&["lattice", "--q", "2", "--n", "3"], dir.path());
    assert_eq!(c3, 0);
    assert_eq!(third, first);
    assert!(err.contains("ignoring cache entry"), "{err}");
}

#[test]
fn morphism_commands() {
    let dir = tempfile::tempdir().unwrap();
    let full = r#"{"source":[1],"target":[1],"blocks":[{"sx":0,"ty":0,"terms":[{"subspace_rref":[[1,0],[0,1]],"coeff":"1/1"}]}]}"#;
    let (code, out, _) = qinterp(&["compose", "--f", full, "--g", full], dir.path());
    assert_eq!(code, 0);
    assert_eq!(json_of(&out)["blocks"][0]["terms"][0]["coeff"], json!("(t)/1"));
    let (_, out, _) = qinterp(&["compose", "--f", full, "--g", full, "--t", "3"], dir.path());
    assert_eq!(json_of(&out)["blocks"][0]["terms"][0]["coeff"], json!("3/1"));

    let file = dir.path().join("diag.json");
    std::fs::write(&file, r#"{"source":[1],"target":[1],"blocks":[{"sx":0,"ty":0,"terms":[{"subspace_rref":[[1,1]],"coeff":"1/1"}]}]}"#).unwrap();
    let (_, out, _) = qinterp(&["trace", "--f", file.to_str().unwrap()], dir.path());
    assert_eq!(json_of(&out)["trace"], json!("(t)/1"));
    let (_, out, _) = qinterp(&["tensor", "--f", full, "--g", file.to_str().unwrap()], dir.path());
    assert_eq!(json_of(&out)["source"], json!([2]));
}

#[test]
fn analysis_commands() {
    let dir = tempfile::tempdir().unwrap();
    let (_, out, _) = qinterp(&["radical", "--x", "[1]", "--t", "2"], dir.path());
    assert_eq!(json_of(&out)["radical_dim"], json!(1));
    let (_, out, _) = qinterp(&["radical", "--x", "[2]"], dir.path());
    assert_eq!(json_of(&out)["singular_at"], json!(["1", "2"]));
    let (_, out, _) = qinterp(&["center", "--x", "[2]", "--t", "-1"], dir.path());
    let v = json_of(&out);
    assert_eq!((&v["center_dim"], &v["blocks_expected"]), (&json!(5), &json!(5)));
    let (_, out, _) = qinterp(&["gram", "--x", "[]", "--y", "[1]"], dir.path());
    assert_eq!(json_of(&out)["entries"], json!([["1/1", "1/1"], ["1/1", "(t)/1"]]));
    let (_, out, _) = qinterp(&["idempotents", "--n", "2"], dir.path());
    let v = json_of(&out);
    assert_eq!((&v["orthogonal"], &v["complete"]), (&json!(true), &json!(true)));
    assert_eq!(v["idempotents"][4]["trace"], json!("(t^2-3*t+2)/1"));
    let (_, out, _) = qinterp(&["specialize", "--r", "2", "--n", "2"], dir.path());
    let v = json_of(&out);
    assert_eq!((&v["dim"], &v["epimorphisms"]), (&json!(16), &json!(6)));
    let (code, out, _) = qinterp(&["selftest", "--samples", "5"], dir.path());
    assert_eq!(code, 0, "{out}");
    assert_eq!(json_of(&out)["failed"], json!(0));
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = qinterp(&["hom-dim", "--dx", "1", "--bogus"], dir.path());
    assert_eq!(code, 2);
    assert!(err.contains("Usage"), "{err}");
    let (code, out, _) = qinterp(&["hom-dim", "--q", "6", "--dx", "1", "--dy", "1"], dir.path());
    assert_eq!(code, 1);
    assert!(json_of(&out)["error"].is_string());
    let (code, _, _) = qinterp(&["specialize", "--r", "1", "--n", "1", "--t", "3"], dir.path());
    assert_eq!(code, 1);
    let (code, _, _) = qinterp(&["gram", "--x", "[3]", "--y", "[3]", "--limit-hom", "100"], dir.path());
    assert_eq!(code, 1);
}
