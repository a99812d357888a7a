use std::process::Command;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_limitfold")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn present() {
    let g1 = fixture("g1.chain");
    let (code, out) = run(&["present", "--chain", &g1, "--subgroup", &fixture("a_t.sub")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("generators 2 s1 s2\nrelators 1\n"), "{out}");
    let (code, out) = run(&["present", "--chain", &g1, "--subgroup", &fixture("empty.sub")]);
    assert_eq!((code, out.as_str()), (0, "generators 0\nrelators 0\n"));
    let (_, out) = run(&["present", "--chain", &g1, "--subgroup", &fixture("b_tbt.sub")]);
    assert!(out.starts_with("generators 2 s1 s2\nrelators 0\n"), "{out}");
}

#[test]
fn power_coset() {
    let g1 = fixture("g1.chain");
    let (code, out) = run(&["pcm", "--chain", &g1, "--subgroup", &fixture("at.sub"), "--x", "t^-1", "--g", "a"]);
    assert_eq!((code, out.as_str()), (0, "YES m=1\n"));
    let (_, out) = run(&["pcm", "--chain", &g1, "--subgroup", &fixture("t.sub"), "--x", "1", "--g", "a"]);
    assert_eq!(out, "NO\n");
    let (_, out) = run(&["pcm", "--chain", &g1, "--subgroup", &fixture("a_t.sub"), "--x", "1", "--g", "t a"]);
    assert_eq!(out, "YES m=1\n");
    let (_, out) =
        run(&["pcm", "--chain", &g1, "--subgroup", &fixture("at.sub"), "--x", "t^-1", "--g", "a", "--witness"]);
    assert!(out.starts_with("YES m=1\nwitness "), "{out}");
    let (code, _) = run(&["pcm", "--chain", &g1, "--subgroup", &fixture("t.sub"), "--x", "1", "--g", "[a,t]"]);
    assert_eq!(code, 4);
}

#[test]
fn word_problem() {
    let g1 = fixture("g1.chain");
    assert_eq!(run(&["wp", "--chain", &g1, "--w", "[a,t]"]), (0, "TRIVIAL\n".into()));
    assert_eq!(run(&["wp", "--chain", &g1, "--w", "[b,t]"]), (0, "NONTRIVIAL\n".into()));
    assert_eq!(run(&["wp", "--chain", &g1, "--w", ""]), (0, "TRIVIAL\n".into()));
}

#[test]
fn exit_codes() {
    let g1 = fixture("g1.chain");
    assert_eq!(run(&["wp", "--chain", &g1, "--w", "a^"]).0, 2);
    assert_eq!(run(&["wp", "--chain", &fixture("missing.chain"), "--w", "a"]).0, 2);
    let (code, _) =
        run(&["present", "--chain", &fixture("g2.chain"), "--subgroup", &fixture("g2_mixed.sub"), "--budget", "1"]);
    assert_eq!(code, 3);
}
