use std::io::Write;
use std::process::{Command, Output, Stdio};

fn leafpower(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_leafpower"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn root_to_stdout_then_verify() {
    let bull = "5 5\n0 1\n1 2\n0 2\n0 3\n1 4\n";
    let out = leafpower(&["root", "-k", "5", "-", "--format", "newick"], bull);
    assert_eq!(out.status.code(), Some(0));
    let report = String::from_utf8(out.stderr).unwrap();
    assert!(report.contains("result: root"), "{report}");
    let tree = String::from_utf8(out.stdout).unwrap();
    assert!(tree.trim_end().ends_with(';'));

    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("bull.txt");
    std::fs::write(&g, bull).unwrap();
    let g = g.to_str().unwrap();
    let out = leafpower(&["verify", "-k", "5", g, "-", "--format", "newick"], &tree);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let out = leafpower(&["verify", "-k", "3", g, "-", "--format", "newick"], &tree);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_name_the_line() {
    let out = leafpower(&["recognize", "-k", "4", "-"], "3 2\n0 1\n1 x\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 3"));
}

#[test]
fn help_and_version() {
    let out = leafpower(&["--help"], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("recognize"));
    assert_eq!(leafpower(&[], "").status.code(), Some(2));
}
