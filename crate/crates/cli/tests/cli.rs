//! End-to-end runs of the binary. JSON reports are compared against files
//! in `tests/golden`; set `TOTALEXT_BLESS=1` to rewrite them.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const K4: &str = "planar 1\nvertices 4\nrot 0: 1 2 3\nrot 1: 0 3 2\nrot 2: 0 1 3\nrot 3: 0 2 1\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_totalext"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str, actual: &str) {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    if std::env::var_os("TOTALEXT_BLESS").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

fn workdir() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("K4.pg"), K4).unwrap();
    fs::write(dir.path().join("empty.ptc"), "palette 7\n").unwrap();
    dir
}

#[test]
fn gen_writes_graph_and_precoloring() {
    let dir = workdir();
    let out = run(dir.path(), &["gen", "greedy-tree", "--k", "3", "-o", "ex21"]);
    assert_eq!(code(&out), 0);
    let pg = fs::read_to_string(dir.path().join("ex21.pg")).unwrap();
    let ptc = fs::read_to_string(dir.path().join("ex21.ptc")).unwrap();
    golden("ex21.pg", &pg);
    golden("ex21.ptc", &ptc);
}

#[test]
fn generation_is_byte_identical() {
    let dir = workdir();
    for prefix in ["a", "b"] {
        assert_eq!(code(&run(dir.path(), &["gen", "joined-triangles", "-o", prefix])), 0);
    }
    for ext in ["pg", "ptc"] {
        let a = fs::read(dir.path().join(format!("a.{ext}"))).unwrap();
        let b = fs::read(dir.path().join(format!("b.{ext}"))).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn extend_exit_codes() {
    let dir = workdir();
    run(dir.path(), &["gen", "greedy-tree", "--k", "3", "-o", "ex21"]);
    let impossible = run(
        dir.path(),
        &["extend", "-g", "ex21.pg", "-p", "ex21.ptc", "-k", "6", "--exact"],
    );
    assert_eq!(code(&impossible), 1);
    assert!(stdout(&impossible).contains("proven-impossible"));

    let colored = run(
        dir.path(),
        &["extend", "-g", "ex21.pg", "-p", "ex21.ptc", "-k", "7", "--json"],
    );
    assert_eq!(code(&colored), 0);
    golden("extend_ex21_k7.json", &stdout(&colored));

    let written = run(
        dir.path(),
        &[
            "extend", "-g", "ex21.pg", "-p", "ex21.ptc", "-k", "7", "--exact", "-o", "full.ptc",
        ],
    );
    assert_eq!(code(&written), 0);
    fs::copy(dir.path().join("full.ptc"), dir.path().join("check.ptc")).unwrap();
    let check = run(
        dir.path(),
        &["check", "-g", "ex21.pg", "-p", "check.ptc", "--mode", "total"],
    );
    assert_eq!(code(&check), 0);
    assert_eq!(stdout(&check).trim(), "proper");
}

#[test]
fn budget_exhaustion_exits_two() {
    let dir = workdir();
    run(dir.path(), &["gen", "joined-triangles", "-o", "ex23"]);
    let out = run(
        dir.path(),
        &[
            "extend", "-g", "ex23.pg", "-p", "ex23.ptc", "--exact", "--budget", "10", "--json",
        ],
    );
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("\"status\": \"timeout\""));
}

#[test]
fn greedy_only_can_get_stuck() {
    let dir = workdir();
    run(dir.path(), &["gen", "subdivided-star", "--t", "3", "-o", "ex22"]);
    let out = run(dir.path(), &["extend", "-g", "ex22.pg", "-p", "ex22.ptc", "--greedy"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("greedy-stuck"));
}

#[test]
fn audit_k4_totals() {
    let dir = workdir();
    let text = run(
        dir.path(),
        &["audit", "-g", "K4.pg", "-p", "empty.ptc", "--scheme", "R", "-t", "4"],
    );
    assert_eq!(code(&text), 0);
    assert!(stdout(&text).contains("totals: initial -8  final -8"));

    let json = run(
        dir.path(),
        &[
            "audit",
            "-g",
            "K4.pg",
            "-p",
            "empty.ptc",
            "--scheme",
            "R",
            "-t",
            "4",
            "--json",
            "--dot",
            "k4.dot",
        ],
    );
    assert_eq!(code(&json), 0);
    golden("audit_k4_r.json", &stdout(&json));
    let dot = fs::read_to_string(dir.path().join("k4.dot")).unwrap();
    assert!(dot.contains("charges [shape=box"));

    let strict = run(
        dir.path(),
        &[
            "audit",
            "-g",
            "K4.pg",
            "-p",
            "empty.ptc",
            "--scheme",
            "R",
            "-t",
            "4",
            "--strict",
        ],
    );
    assert_eq!(
        code(&strict),
        1,
        "K4 has no high vertex, so the degree-sum predicate fails"
    );
}

#[test]
fn audit_rejects_wrong_shape() {
    let dir = workdir();
    run(dir.path(), &["gen", "greedy-tree", "--k", "3", "-o", "ex21"]);
    let out = run(
        dir.path(),
        &["audit", "-g", "ex21.pg", "-p", "ex21.ptc", "--scheme", "T"],
    );
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("maximum degree at most 1"));
}

#[test]
fn classify_and_derive_lists_json() {
    let dir = workdir();
    run(dir.path(), &["gen", "joined-triangles", "-o", "ex23"]);
    let out = run(
        dir.path(),
        &["classify", "-g", "ex23.pg", "-p", "ex23.ptc", "-t", "3", "--json"],
    );
    assert_eq!(code(&out), 0);
    golden("classify_ex23.json", &stdout(&out));

    run(dir.path(), &["gen", "subdivided-star", "--t", "3", "-o", "ex22"]);
    let lists = run(
        dir.path(),
        &["derive-lists", "-g", "ex22.pg", "-p", "ex22.ptc", "--json"],
    );
    assert_eq!(code(&lists), 0);
    golden("derive_lists_ex22.json", &stdout(&lists));
}

#[test]
fn verify_sharpness_json() {
    let dir = workdir();
    let out = run(
        dir.path(),
        &[
            "verify-sharpness",
            "greedy-tree",
            "subdivided-star",
            "--param",
            "3,4",
            "--jobs",
            "2",
            "--json",
        ],
    );
    assert_eq!(code(&out), 0);
    golden("verify_sharpness.json", &stdout(&out));
}

#[test]
fn bipartite_extension_route() {
    let dir = workdir();
    // K_{1,4} with one precolored edge; Δ = 4, d = 1, so k = 9 suffices
    fs::write(
        dir.path().join("star.pg"),
        "planar 1\nvertices 5\nrot 0: 1 2 3 4\nrot 1: 0\nrot 2: 0\nrot 3: 0\nrot 4: 0\n",
    )
    .unwrap();
    fs::write(dir.path().join("star.ptc"), "palette 9\nvcolor 0 1\necolor 0 1 2\n").unwrap();
    let out = run(
        dir.path(),
        &["extend", "-g", "star.pg", "-p", "star.ptc", "--bipartite", "--json"],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("\"route\": \"bipartite\""));
    let small = run(
        dir.path(),
        &["extend", "-g", "star.pg", "-p", "star.ptc", "--bipartite", "-k", "8"],
    );
    assert_eq!(code(&small), 3);
    let nonbip = run(dir.path(), &["extend", "-g", "K4.pg", "-p", "empty.ptc", "--bipartite"]);
    assert_eq!(code(&nonbip), 3);
}

#[test]
fn input_errors_exit_three() {
    let dir = workdir();
    assert_eq!(code(&run(dir.path(), &["frobnicate"])), 3);
    assert_eq!(code(&run(dir.path(), &["extend", "-g", "K4.pg"])), 3);
    assert_eq!(
        code(&run(dir.path(), &["extend", "-g", "missing.pg", "-p", "empty.ptc"])),
        3
    );
    assert_eq!(
        code(&run(
            dir.path(),
            &["audit", "-g", "K4.pg", "-p", "empty.ptc", "--scheme", "Q"]
        )),
        3
    );
    assert_eq!(code(&run(dir.path(), &["gen", "greedy-tree", "--k", "2"])), 3);
    fs::write(dir.path().join("k5.pg"), {
        let mut s = String::from("planar 1\nvertices 5\n");
        for v in 0..5 {
            let nb: Vec<String> = (0..5).filter(|&u| u != v).map(|u| u.to_string()).collect();
            s += &format!("rot {v}: {}\n", nb.join(" "));
        }
        s
    })
    .unwrap();
    let k5 = run(dir.path(), &["check", "-g", "k5.pg", "-p", "empty.ptc"]);
    assert_eq!(code(&k5), 3);
    assert!(String::from_utf8_lossy(&k5.stderr).contains("Euler"));
    assert_eq!(code(&run(dir.path(), &["--help"])), 0);
}

#[test]
fn check_reports_violations() {
    let dir = workdir();
    fs::write(dir.path().join("bad.ptc"), "palette 4\nvcolor 0 1\nvcolor 1 1\n").unwrap();
    let out = run(dir.path(), &["check", "-g", "K4.pg", "-p", "bad.ptc", "--json"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("adjacent-vertices"));
    let of_h = run(dir.path(), &["check", "-g", "K4.pg", "-p", "bad.ptc", "--mode", "of-h"]);
    assert_eq!(code(&of_h), 0);
}
