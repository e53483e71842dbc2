use std::path::Path;
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_kenabling");

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().expect("exited"), text)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn scan_four_p_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.col");
    assert_eq!(run(&["gen", "4pd", "--d", "2", "--out", p(&g)]).0, 0);
    let (code, text) = run(&["scan", "--graph", p(&g), "--k", "3"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("0 excluding vertices"), "{text}");
    let (code, text) = run(&["scan", "--graph", p(&g), "--k", "4"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("8 excluding vertices"), "{text}");
}

#[test]
fn kfn_prints_value() {
    let (code, text) = run(&["kfn", "--n", "4"]);
    assert_eq!(code, 0);
    assert!(text.contains("k(4) = 2"), "{text}");
    let (code, text) = run(&["kfn", "--n", "6", "--mode", "canonical", "--threads", "2"]);
    assert_eq!(code, 0);
    assert!(text.contains("k(6) = 2"), "{text}");
    assert_eq!(run(&["kfn", "--n", "8", "--mode", "labeled"]).0, 2);
}

#[test]
fn check_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.col");
    run(&["gen", "4pd", "--d", "3", "--out", p(&g)]);
    let (code, text) = run(&["check", "--graph", p(&g), "--vertex", "4", "--k", "4"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("4-enabling"));
    let (code, text) = run(&["check", "--graph", p(&g), "--vertex", "0", "--k", "5"]);
    assert_eq!(code, 1);
    assert!(text.contains("no k-clique"), "{text}");
    assert_eq!(run(&["check", "--graph", p(&g), "--vertex", "99", "--k", "2"]).0, 2);
}

#[test]
fn poly_exclude_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.col");
    let cert = dir.path().join("c.json");
    assert_eq!(run(&["gen", "gnp", "--n", "150", "--p", "0.5", "--seed", "3", "--out", p(&g)]).0, 0);
    let (code, text) = run(&["poly-exclude", "--graph", p(&g), "--k", "50", "--delta", "1", "--cert-out", p(&cert)]);
    assert_eq!(code, 0, "{text}");
    let (code, text) = run(&["verify", "--graph", p(&g), "--cert", p(&cert)]);
    assert_eq!(code, 0);
    assert!(text.starts_with("PASS"), "{text}");

    // the same certificate against a different graph fails on the hash
    let other = dir.path().join("h.col");
    run(&["gen", "gnp", "--n", "150", "--p", "0.5", "--seed", "4", "--out", p(&other)]);
    let (code, text) = run(&["verify", "--graph", p(&other), "--cert", p(&cert)]);
    assert_eq!(code, 1);
    assert!(text.starts_with("FAIL"), "{text}");

    // out of regime
    let (code, text) = run(&["poly-exclude", "--graph", p(&g), "--k", "30", "--delta", "1"]);
    assert_eq!(code, 2, "{text}");
}

#[test]
fn tampered_certificate_fails() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.col");
    let cert = dir.path().join("c.json");
    run(&["gen", "gnp", "--n", "150", "--p", "0.5", "--seed", "8", "--out", p(&g)]);
    run(&["poly-exclude", "--graph", p(&g), "--k", "50", "--delta", "1", "--cert-out", p(&cert)]);
    let text = std::fs::read_to_string(&cert).unwrap();
    let tampered = text.replace("\"k\": 50", "\"k\": 51");
    assert_ne!(text, tampered);
    std::fs::write(&cert, tampered).unwrap();
    let (code, out) = run(&["verify", "--graph", p(&g), "--cert", p(&cert)]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("bad.col");
    std::fs::write(&g, "p 3 2\ne 0 1\ne 1 x\n").unwrap();
    let (code, text) = run(&["scan", "--graph", p(&g), "--k", "2"]);
    assert_eq!(code, 2);
    assert!(text.contains("line 3"), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["gen", "gnp", "--n", "10", "--p", "0.5", "--out", "/dev/null"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["bounds", "--k", "10", "--m", "2", "--delta", "4"]).0, 2);
    assert_eq!(run(&["almost-clique", "--graph", "/nonexistent", "--k", "3", "--eps", "1/2"]).0, 2);
}

#[test]
fn bounds_table() {
    let (code, text) = run(&["bounds", "--k", "100", "--m", "5", "--n", "380", "--delta", "1"]);
    assert_eq!(code, 0);
    for needle in ["36", "55", "67", "76", "m = 6, eps = 1/42, K = 49"] {
        assert!(text.contains(needle), "{needle}: {text}");
    }
    let (_, text) = run(&["bounds", "--k", "8", "--m", "2"]);
    assert!(text.contains(">= 12"), "{text}");
}

#[test]
fn almost_clique_and_generators() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.g6");
    let (code, text) = run(&["gen", "planted", "--n", "100", "--p", "0.3", "--size", "20", "--seed", "1", "--out", p(&g)]);
    assert_eq!(code, 0, "{text}");
    let (code, text) = run(&["almost-clique", "--graph", p(&g), "--k", "20", "--eps", "1/4"]);
    assert_eq!(code, 0);
    assert!(text.contains("Acceptable"), "{text}");
    let e = dir.path().join("e.col");
    std::fs::write(&e, "p 20 0\n").unwrap();
    assert_eq!(run(&["almost-clique", "--graph", p(&e), "--k", "5", "--eps", "0.4"]).0, 1);

    let padded = dir.path().join("pad.col");
    assert_eq!(run(&["gen", "isolated", "--graph", p(&e), "--k", "4", "--out", p(&padded)]).0, 0);
    assert!(std::fs::read_to_string(&padded).unwrap().starts_with("p 24 0"));

    let g1 = dir.path().join("g1.col");
    std::fs::write(&g1, "p 6 0\n").unwrap();
    let red = dir.path().join("red.col");
    let (code, text) = run(&["gen", "reduction", "--graph", p(&g1), "--k", "12", "--eps", "1/2", "--out", p(&red)]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("|S| = 37, |T| = 11"), "{text}");
}
