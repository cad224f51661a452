use std::io::Write;
use std::process::{Command, Output, Stdio};

use minmax_core::{census_exact, parse_permutation, Variant};

fn minmax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minmax"))
        .args(args)
        .env_remove("MINMAX_WORKERS")
        .output()
        .unwrap()
}

fn minmax_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_minmax"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn tree_text_and_dot() {
    let text = stdout(&minmax(&["tree", "3 6 7 1 5 2 10 4 9 8"]));
    assert_eq!(text.lines().count(), 10);
    assert_eq!(text.lines().next(), Some("4:1 [Min]"));

    let dot = stdout(&minmax(&[
        "tree",
        "3,6,7,1,5,2,10,4,9,8",
        "--format",
        "dot",
    ]));
    assert_eq!(dot.matches("->").count(), 9);
    assert!(dot.contains("label=\"4:1\""));
}

#[test]
fn tree_json_shape() {
    let json = stdout(&minmax(&["tree", "2 1 3", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["root"], 2);
    assert_eq!(v["nodes"][1]["kind"], "Min");
    assert_eq!(v["nodes"][1]["left"], 1);
    assert_eq!(v["nodes"][0]["parent"], 2);
    assert_eq!(v["nodes"][2]["span"], serde_json::json!([3, 3]));

    let json = stdout(&minmax(&[
        "tree",
        "2 1 3",
        "--variant",
        "min12",
        "--format",
        "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["variant"], "min12");
    assert_eq!(v["root"], 1);
}

#[test]
fn psi_output_parses_back() {
    let out = stdout(&minmax(&["psi", "3 6 7 1 5 2 10 4 9 8", "7"]));
    assert_eq!(out, "3 6 7 1 5 2 4 8 10 9\n");
    let q = parse_permutation(out.trim()).unwrap();
    let back = stdout(&minmax(&["psi", &q.to_string(), "7"]));
    assert_eq!(back, "3 6 7 1 5 2 10 4 9 8\n");
}

#[test]
fn psi_batch_from_stdin() {
    let out = stdout(&minmax_stdin(&["psi", "--stdin", "1"], "1 2 3\n\n1,3,2\n"));
    assert_eq!(out, "3 1 2\n3 2 1\n");
}

#[test]
fn orbit_and_fixed() {
    let out = stdout(&minmax(&["orbit", "2 1 3"]));
    let members: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(members, ["2 1 3", "2 3 1"]);
    for m in members {
        parse_permutation(m).unwrap();
    }

    let out = stdout(&minmax(&[
        "orbit",
        "3 6 7 1 5 2 10 4 9 8",
        "--gens",
        "7,9",
        "--format",
        "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["size"], 4);
    assert_eq!(v["generators"], serde_json::json!([7, 9]));

    assert_eq!(
        stdout(&minmax(&["fixed", "3 6 7 1 5 2 10 4 9 8"])),
        "3 5 10\n"
    );
    let out = stdout(&minmax_stdin(&["fixed", "--stdin"], "1\n1 2\n"));
    assert_eq!(out, "1\n2\n");
}

#[test]
fn census_formats_carry_the_same_numbers() {
    let table = census_exact(6, Variant::MinMax, 1).unwrap();
    let csv = stdout(&minmax(&["census", "6", "--format", "csv"]));
    let json = stdout(&minmax(&["census", "6", "--format", "json"]));
    let text = stdout(&minmax(&["census", "6"]));

    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["total"], 720);
    let leaf: Vec<u64> = serde_json::from_value(v["leaf_counts"].clone()).unwrap();
    assert_eq!(leaf, table.leaf_counts());
    let d: Vec<[u64; 3]> = serde_json::from_value(v["d"].clone()).unwrap();
    assert_eq!(d, table.d());

    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("i,leaf,d0,d1,d2"));
    let text_rows: Vec<Vec<u64>> = text
        .lines()
        .skip(2)
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    for (k, line) in lines.enumerate() {
        let row: Vec<u64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(row, [k as u64 + 1, d[k][0], d[k][0], d[k][1], d[k][2]]);
        assert_eq!(row, text_rows[k]);
    }
}

#[test]
fn census_workers_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_minmax"))
        .args(["census", "7", "--format", "csv"])
        .env("MINMAX_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(
        stdout(&out),
        stdout(&minmax(&[
            "census",
            "7",
            "--format",
            "csv",
            "--workers",
            "1"
        ]))
    );
}

#[test]
fn sample_requires_seed_and_is_replayable() {
    assert_eq!(minmax(&["sample", "10", "100"]).status.code(), Some(2));
    let a = stdout(&minmax(&[
        "sample", "10", "300", "--seed", "3", "--format", "csv",
    ]));
    let b = stdout(&minmax(&[
        "sample", "10", "300", "--seed", "3", "--format", "csv",
    ]));
    assert_eq!(a, b);
    let last = a.lines().last().unwrap();
    assert_eq!(last, "10,300,1,0");
}

#[test]
fn verify_passes() {
    let out = minmax(&["verify", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS theorem-leaf-counts n=5"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(minmax(&["tree", "1 1 2"]).status.code(), Some(2));
    assert_eq!(minmax(&["tree", ""]).status.code(), Some(2));
    assert_eq!(minmax(&["psi", "1 2 3", "4"]).status.code(), Some(2));
    assert_eq!(
        minmax(&["census", "5", "--format", "dot"]).status.code(),
        Some(2)
    );
    assert_eq!(minmax(&["census", "2"]).status.code(), Some(2));
    assert_eq!(minmax(&["census", "14"]).status.code(), Some(2));
    assert_eq!(minmax(&["verify", "11"]).status.code(), Some(2));
    assert_eq!(minmax(&["frobnicate"]).status.code(), Some(2));
}
