use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_yamacalc")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn conclusive_evaluation_exits_zero() {
    let (code, out, _) = run(&["eval", "2*DC8 # S4", "--witness", "DC8,DC8,DC8,DC8"]);
    assert_eq!(code, 0);
    assert!(out.contains("Yamabe = -8π√2"));
}

#[test]
fn structured_output_is_json() {
    let (code, out, _) = run(&["eval", "DC8 # rev(DC8)", "--format", "structured", "--approx"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["invariants"]["i_s"]["kind"], "exact");
    assert!(v["approx_hints"].is_object());
}

#[test]
fn nothing_known_exits_two() {
    let (code, out, _) = run(&["eval", "rev(DC8)"]);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn errors_exit_one_with_message() {
    let (code, _, err) = run(&["eval", "DC8 #"]);
    assert_eq!(code, 1);
    assert!(err.contains("position 5"), "{err}");
    let (code, _, err) = run(&["eval", "Nope"]);
    assert_eq!(code, 1);
    assert!(err.contains("Nope"));
    let (code, _, _) = run(&["eval", "K3", "--witness", "K3,K3"]);
    assert_eq!(code, 1);
}

#[test]
fn quadruple_and_diagonalize_verbs() {
    assert_eq!(run(&["check-quadruple", "DC8,DC8,DC8,DC8"]).0, 0);
    let (code, out, _) = run(&["check-quadruple", "DC8,DC8,DC8,K3"]);
    assert_eq!(code, 2);
    assert!(out.contains("FAIL"));

    let dir = tempfile::tempdir().unwrap();
    let gram = dir.path().join("q.txt");
    std::fs::write(&gram, "-2 1\n1 -1\n").unwrap();
    let (code, out, _) = run(&["diagonalize", "--gram", gram.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("U^T Q U"));
    let (code, _, err) = run(&["diagonalize", "--gram", "/nonexistent/q.txt"]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot read"));
}

#[test]
fn blocks_lists_catalog() {
    let (code, out, _) = run(&["blocks"]);
    assert_eq!(code, 0);
    assert!(out.contains("K3") && out.contains("dissolve"));
}
