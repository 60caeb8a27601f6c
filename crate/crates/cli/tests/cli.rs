//! Golden-file tests for the `factor-spectra` binary. Run with
//! `UPDATE_GOLDEN=1` to rewrite the expected outputs.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use factor_spectra::graph::{enumerate_graphs, to_graph6};

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn run(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_factor-spectra"))
        .args(args)
        .env_remove("FACTOR_SPECTRA_THREADS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap_or(-1),
    }
}

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.out"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

fn ok(name: &str, args: &[&str], stdin: &str) {
    let r = run(args, stdin);
    assert_eq!(r.code, 0, "{args:?} failed: {}", r.stderr);
    golden(name, &r.stdout);
}

fn extremal_g6() -> String {
    let r = run(
        &[
            "construct",
            "F",
            "--a",
            "2",
            "--b",
            "3",
            "--k",
            "1",
            "--n",
            "12",
        ],
        "",
    );
    assert_eq!(r.code, 0);
    r.stdout
}

fn corpus(n: usize) -> String {
    enumerate_graphs(n, true)
        .unwrap()
        .map(|g| to_graph6(&g).unwrap() + "\n")
        .collect()
}

#[test]
fn construct_outputs() {
    ok(
        "construct_f_g6",
        &[
            "construct",
            "F",
            "--a",
            "1",
            "--b",
            "2",
            "--k",
            "0",
            "--n",
            "10",
            "--out",
            "g6",
        ],
        "",
    );
    ok(
        "construct_f_json",
        &[
            "construct",
            "F",
            "--a",
            "2",
            "--b",
            "3",
            "--k",
            "1",
            "--n",
            "12",
            "--out",
            "json",
        ],
        "",
    );
    ok(
        "construct_base_dot",
        &[
            "construct",
            "base",
            "--a",
            "1",
            "--b",
            "2",
            "--n",
            "6",
            "--out",
            "dot",
        ],
        "",
    );
    ok(
        "construct_family",
        &["construct", "family", "--r", "3", "--n", "12"],
        "",
    );
}

#[test]
fn lambda_and_hong() {
    let f = extremal_g6();
    ok("lambda_text", &["lambda", "--out", "text"], &f);
    ok("hong_csv", &["hong", "--out", "csv", "--g6", "E~~w"], "");
}

#[test]
fn deciders() {
    let f = extremal_g6();
    ok(
        "decide_json",
        &["decide", "--a", "2", "--b", "3", "--k", "1"],
        &f,
    );
    ok(
        "fractional_csv",
        &[
            "fractional",
            "--a",
            "2",
            "--b",
            "3",
            "--k",
            "1",
            "--out",
            "csv",
        ],
        &f,
    );
    ok(
        "rk_text",
        &["rk", "--r", "2", "--k", "0", "--out", "text"],
        &corpus(4),
    );
    ok(
        "factor_json",
        &["factor", "--a", "1", "--b", "2", "--g6", "D~{"],
        "",
    );
    ok(
        "factor_fractional_json",
        &[
            "factor",
            "--a",
            "1",
            "--b",
            "2",
            "--fractional",
            "--g6",
            "D~{",
        ],
        "",
    );
}

#[test]
fn expect_critical_sets_exit_code() {
    let f = extremal_g6();
    assert_eq!(
        run(
            &[
                "decide",
                "--a",
                "2",
                "--b",
                "3",
                "--k",
                "1",
                "--expect-critical"
            ],
            &f
        )
        .code,
        1
    );
    let k6 = run(
        &[
            "decide",
            "--a",
            "1",
            "--b",
            "2",
            "--k",
            "1",
            "--expect-critical",
            "--g6",
            "E~~w",
        ],
        "",
    );
    assert_eq!(k6.code, 0, "{}", k6.stderr);
}

#[test]
fn verify_and_explore() {
    ok(
        "verify_perron_text",
        &[
            "verify",
            "perron-system",
            "--a",
            "2",
            "--b",
            "3",
            "--k",
            "1",
            "--out",
            "text",
        ],
        "",
    );
    ok(
        "verify_quotient_json",
        &[
            "verify",
            "quotient-agreement",
            "--a",
            "2",
            "--b",
            "3",
            "--k",
            "1",
        ],
        "",
    );
    ok(
        "verify_sharpness_json",
        &[
            "verify",
            "theorem-sharpness",
            "--target",
            "edge-count",
            "--a",
            "1",
            "--b",
            "2",
            "--k",
            "1",
        ],
        "",
    );
    ok(
        "explore_json",
        &[
            "explore", "--r", "2", "--k", "0", "--n", "12", "--budget", "300", "--seed", "7",
        ],
        "",
    );
}

#[test]
fn convert_round_trip() {
    let edges = run(&["convert", "--out", "edges", "--g6", "I~~~{A?_?"], "").stdout;
    golden("convert_edges", &edges);
    let back = run(&["convert", "--format", "edges"], &edges);
    assert_eq!(back.code, 0, "{}", back.stderr);
    assert_eq!(back.stdout, "I~~~{A?_?\n");
    let all = corpus(5);
    assert_eq!(run(&["convert"], &all).stdout, all);
}

#[test]
fn parallel_corpus_keeps_input_order() {
    let all = corpus(5);
    let serial = run(&["lambda", "--out", "csv", "--parallel", "1"], &all);
    let parallel = run(&["lambda", "--out", "csv", "--parallel", "4"], &all);
    assert_eq!(serial.code, 0);
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(serial.stdout.lines().count(), 729);
}

#[test]
fn bad_input_exits_with_two() {
    let r = run(&["lambda"], "D~{\nnot-a-graph\n");
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
    assert_eq!(
        run(&["construct", "F", "--a", "3", "--b", "2", "--n", "10"], "").code,
        2
    );
    assert_eq!(
        run(
            &[
                "verify",
                "theorem-sharpness",
                "--target",
                "nope",
                "--a",
                "1",
                "--b",
                "2"
            ],
            ""
        )
        .code,
        2
    );
    assert_eq!(run(&["frobnicate"], "").code, 2);
}
