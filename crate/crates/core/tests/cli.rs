use std::process::Command;

fn d02sel(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_d02sel")).args(args).output().expect("spawn d02sel");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

#[test]
fn select_prints_cylinder() {
    let (code, stdout, stderr) = d02sel(&["select", "-e", "pt(0,0) ^ cyl(0)"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "components 1\ncomponent 0: states 2, initial 0\n  0 -0-> 1\n  1 -0-> 1\n  1 -1-> 1\ncondition 1\n");
    assert!(stderr.is_empty());
}

#[test]
fn predicate_exit_codes() {
    assert_eq!(d02sel(&["equiv", "-e", "full", "-f", "full \\ pt(0,0)", "--mod-countable"]).0, 0);
    assert_eq!(d02sel(&["countable", "-e", "nofactor(11)"]).0, 1);
    assert_eq!(d02sel(&["countable", "-e", "tree(0*|0*10*)"]).0, 0);
}

#[test]
fn error_exit_codes() {
    let (code, stdout, stderr) = d02sel(&["eval", "-e", "cyl(0) &"]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.starts_with("error: syntax error at line 1"), "{stderr}");

    assert_eq!(d02sel(&["frobnicate"]).0, 2);
    assert_eq!(d02sel(&["member", "-e", "full", "-u", "e", "-v", "e"]).0, 2);

    let (code, _, stderr) = d02sel(&["--max-states", "3", "decompose", "-e", "nofactor(111) ^ nofactor(000)"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("resource limit"), "{stderr}");
}

#[test]
fn help_succeeds() {
    let (code, stdout, _) = d02sel(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("select"));
}

#[test]
fn let_scripts() {
    let (code, stdout, _) = d02sel(&["eval", "-e", "let G = nofactor(11);\nlet H = G & cyl(1);\nH \\ H"]);
    assert_eq!((code, stdout.as_str()), (0, "constant false\n"));
}

#[test]
fn report_is_json() {
    let (code, stdout, _) = d02sel(&["select", "--report", "-e", "pt(0,0) ^ cyl(0)"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("json");
    assert_eq!(v["chain"]["rank"], 2);
    assert_eq!(v["kernels"].as_array().map(Vec::len), Some(2));
    assert_eq!(v["selected"]["condition"], serde_json::json!(["1"]));
}

#[test]
fn dot_output() {
    let (code, stdout, _) = d02sel(&["closure", "--dot", "-e", "pt(e,0)"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("digraph"), "{stdout}");
    assert!(stdout.trim_end().ends_with('}'));
}

#[test]
fn check_reports_suite() {
    let (code, stdout, _) = d02sel(&["check", "--suite", "theorem", "--cases", "5", "--seed", "3"]);
    assert_eq!(code, 0, "{stdout}");
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("json");
    assert_eq!(v["passed"], 5);
    assert_eq!(v["counterexample"], serde_json::Value::Null);
}
