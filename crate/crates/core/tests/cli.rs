use std::process::{Command, Output};

fn csg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csg"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_examples() {
    let o = csg(&["solve", "sstar:1,1,1,2", "--L", "1,2,4", "--no-timing"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("grundy 3\noutcome N\n"));

    let o = csg(&[
        "solve",
        "path:4",
        "--L",
        "1,2,3",
        "--format",
        "json",
        "--no-timing",
    ]);
    assert_eq!(
        stdout(&o),
        "{\"input\":\"path:4\",\"L\":\"1,2,3\",\"grundy\":0,\"outcome\":\"P\",\"millis\":0}\n"
    );

    // P2 under {1}: the only option is P1 of value 1.
    let o = csg(&["solve", "edges:0-1", "--L", "1", "--no-timing"]);
    assert!(stdout(&o).contains("grundy 0\noutcome P\n"));

    let o = csg(&[
        "solve",
        "append(sstar:1,1,u=0,k=3)",
        "--L",
        "I:3",
        "--format",
        "csv",
        "--no-timing",
    ]);
    assert_eq!(
        stdout(&o),
        "input,L,grundy,outcome,millis\n\"append(sstar:1,1,u=0,k=3)\",\"1,2,3\",2,N,0\n"
    );
}

#[test]
fn sequence_examples() {
    let o = csg(&["sequence", "path", "--L", "2,4,7", "--kmax", "30"]);
    assert!(stdout(&o).contains("sequence 00112203(102) "));

    let o = csg(&["sequence", "star:1^3", "--L", "1,2,3,4", "--kmax", "20"]);
    let column: String = (0..=20)
        .map(|k| ["2", "0", "1", "4", "3"][k % 5])
        .collect::<Vec<_>>()
        .join(" ");
    assert!(
        stdout(&o).contains(&format!("values {column}\n")),
        "{}",
        stdout(&o)
    );
    assert!(stdout(&o).contains("sequence (20143) "));

    let o = csg(&[
        "sequence",
        "sstar:1,1@center",
        "--L",
        "1,3",
        "--kmax",
        "40",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sequence"], "(10)");
    assert_eq!(v["values"].as_array().unwrap().len(), 41);
}

#[test]
fn table_fixture_is_byte_exact() {
    let o = csg(&["table", "S1tk", "--N", "4", "--kmax", "8", "--cmax", "10"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), include_str!("fixtures/table1_s1tk_n4.csv"));
}

#[test]
fn deterministic_output() {
    for args in [
        &["table", "S1kl", "--N", "6", "--format", "json"][..],
        &["table", "S1tk", "--N", "3", "--format", "text"],
        &["certify", "star:1^2@center", "--L", "2,4,7"],
        &["verify", "fixtures-124", "--no-timing"],
    ] {
        let (a, b) = (csg(args), csg(args));
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn certify_reports() {
    let o = csg(&["certify", "path", "--L", "I:3"]);
    let text = stdout(&o);
    assert!(text.contains("T_f 4\nk_start 0\n"), "{text}");
    assert!(text.ends_with("replay matches solver\n"));
    let o = csg(&["certify", "path", "--L", "2,4,7", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_selected_checks() {
    let o = csg(&["verify", "paths", "plus-m", "--jobs", "2", "--no-timing"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("paths pass ") && lines[0].ends_with(" 0"));
    assert!(lines[1].starts_with("plus-m pass "));
    assert!(stdout(&csg(&["verify", "--list"])).contains("certificates\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        csg(&["solve", "sstar:1,,2", "--L", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        csg(&["solve", "path:3", "--L", "I:x"]).status.code(),
        Some(2)
    );
    assert_eq!(csg(&["table", "S9", "--N", "3"]).status.code(), Some(2));
    assert_eq!(
        csg(&["solve", "edges:0-1,2-3", "--L", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        csg(&["solve", "append(path:64,u=0,k=1)", "--L", "1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        csg(&[
            "sequence",
            "edges:0-1,1-2,2-0@0",
            "--L",
            "1",
            "--kmax",
            "70"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(csg(&["--version"]).status.code(), Some(0));
}
