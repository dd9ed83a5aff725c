use std::io::Write;
use std::process::{Command, Output, Stdio};

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/golden_fact.txt");

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_stanley-bij"))
        .args(args)
        .env_remove("STANLEY_BIJ_MAX_K")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let o = run(args, stdin);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn enum_counts() {
    assert_eq!(ok(&["enum", "fact", "--type", "2,2"], "").lines().count(), 6);
    assert_eq!(ok(&["enum", "fact", "--type", "3"], "").lines().count(), 2);
    assert_eq!(ok(&["enum", "tree", "--b", "1,1"], "").lines().count(), 6);
    assert_eq!(ok(&["enum", "tree", "--b", "1,2"], "").lines().count(), 24);
}

#[test]
fn enum_over_the_bound_is_an_input_error() {
    let o = run(&["enum", "fact", "--type", "6,6"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn forward_golden() {
    let out = ok(&["map", "forward", GOLDEN], "");
    assert!(out.lines().any(|l| l == "type=1,1,1,1,1,1,1,1,1,1,1,1,1,1"), "{out}");
}

#[test]
fn trace_has_a_snapshot_per_step() {
    let out = ok(&["map", "forward", "--trace", "--instrument", GOLDEN], "");
    assert_eq!(out.lines().filter(|l| l.starts_with("# step ")).count(), 13);
    assert!(out.lines().any(|l| l == "# T2"));
}

#[test]
fn inverse_round_trip() {
    let tree = ok(&["map", "forward", GOLDEN], "");
    let back = ok(&["map", "inverse"], &tree);
    let want = "k=27; (2,3)(13,15,14)(6,9,10)(1,6,26)(11,15,12)(6,8,7)(1,16,15)(21,27,24)(22,23,25)(16,19,18)(1,2,20)(20,22,21)(1,5,4)(16,17)";
    assert_eq!(back.trim(), want);
}

#[test]
fn every_small_factorization_round_trips() {
    for ty in ["2,2", "2,3", "3,2", "2,3,2"] {
        for f in ok(&["enum", "fact", "--type", ty], "").lines() {
            let tree = ok(&["map", "forward"], f);
            assert_eq!(ok(&["map", "inverse"], &tree).trim(), f);
        }
    }
}

#[test]
fn explain_names_a_case_per_factor() {
    let tree = ok(&["map", "forward", GOLDEN], "");
    let out = ok(&["map", "inverse", "--explain"], &tree);
    assert_eq!(out.lines().filter(|l| l.starts_with("# sigma_")).count(), 14);
    assert!(out.contains("# sigma_13 = (1,5,4) case d"), "{out}");
}

#[test]
fn bad_factorization_is_an_input_error() {
    assert_eq!(run(&["map", "forward"], "k=3; (1,2)(1,2)").status.code(), Some(2));
    assert_eq!(run(&["map", "forward"], "k=3; (1,2").status.code(), Some(2));
}

#[test]
fn tree_outside_the_image() {
    let tree = ok(&["enum", "tree", "--b", "1,0,1"], "");
    let first = tree.lines().next().unwrap();
    assert_eq!(run(&["map", "inverse"], first).status.code(), Some(3));
}

#[test]
fn render_first_and_final_trees() {
    let t1 = ok(&["render", GOLDEN], "");
    assert!(t1.starts_with("graph T {"));
    assert_eq!(t1.matches("fillcolor=black").count(), 14);
    assert_eq!(t1.matches("style=solid").count(), 27);
    assert_eq!(t1.matches(" -- ").count(), 40);

    let t2 = ok(&["render"], &ok(&["map", "forward", GOLDEN], ""));
    assert_eq!(t2.matches("fillcolor=black").count(), 14);
    assert_eq!(t2.matches("style=solid").count(), 14);
    assert_eq!(t2.matches(" -- ").count(), 27);
}

#[test]
fn empty_input() {
    for args in [&["render"][..], &["map", "forward"], &["map", "inverse"]] {
        assert_eq!(run(args, "\n").status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn characters() {
    assert_eq!(ok(&["char", "coeff", "--k", "4", "--b", "2,1"], "").trim(), "-4");
    assert_eq!(ok(&["char", "coeff", "--k", "3", "--b", "1,1"], "").trim(), "-3");
    // one box: Ch_1 is the size
    assert_eq!(ok(&["char", "eval", "--k", "1", "--p", "2,1", "--q", "3,1"], "").trim(), "7");
    assert_eq!(run(&["char", "eval", "--k", "1", "--p", "1", "--q", "1,2"], "").status.code(), Some(2));
}

#[test]
fn verify_small() {
    let out = ok(&["verify", "--k", "5", "--samples", "50"], "");
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn trace_matches_the_step_fixture() {
    let out = ok(&["map", "forward", "--trace", GOLDEN], "");
    let ops: Vec<&str> = out
        .lines()
        .filter_map(|l| l.strip_prefix("# step "))
        .map(|l| l.split_once(": ").unwrap().1.split(' ').next().unwrap())
        .collect();
    let want = fixture("golden_ops.txt");
    assert_eq!(ops, want.lines().collect::<Vec<_>>());
    assert_eq!(out, fixture("golden_trace.txt"));
}

#[test]
fn golden_tree_fixture() {
    assert_eq!(ok(&["map", "forward", GOLDEN], ""), fixture("golden_tree.txt"));
    let back = ok(&["map", "inverse", &format!("{}/../../fixtures/golden_tree.txt", env!("CARGO_MANIFEST_DIR"))], "");
    assert!(back.starts_with("k=27; (2,3)(13,15,14)"));
}
