use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mpcode"))
}

fn worked() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/worked.toml")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(dir: &tempfile::TempDir, text: &str) -> PathBuf {
    let p = dir.path().join("ws.toml");
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn worked_config_passes() {
    let cfg = worked();
    let o = run(&["analyze", "--config", cfg.to_str().unwrap()]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("summary: 9/9 tasks passed"));
    assert!(text.contains("  product = X^4 + (1,1)"));
    assert!(text.contains("    [ (2,0)  (1,0)  (1,0)  (0,0)  (0,2)  (0,1)  (0,1)  (0,0) ]"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let cfg = worked();
    for format in ["text", "csv"] {
        let a = run(&["analyze", "--config", cfg.to_str().unwrap(), "--format", format]);
        let b = run(&["analyze", "--config", cfg.to_str().unwrap(), "--format", format]);
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn single_code_and_mpc_subcommands() {
    let cfg = worked();
    let o = run(&["analyze", "--config", cfg.to_str().unwrap(), "--code", "row2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("  distance = 1\n"));

    let o = run(&["mpc", "--config", cfg.to_str().unwrap(), "--code", "z4_mpc"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("  bound = 1\n"));
    assert!(text.contains("  distance = 1\n"));
    assert!(text.contains("  witness = absent\n"));

    // every matrix-product code in the file
    let o = run(&["mpc", "--config", cfg.to_str().unwrap()]);
    assert!(stdout(&o).contains("summary: 2/2 tasks passed"));
}

#[test]
fn skew_subcommand_runs_an_ad_hoc_operation() {
    let cfg = worked();
    let o = run(&[
        "skew", "--config", cfg.to_str().unwrap(), "--op", "mul", "--left", "g", "--right", "h",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("  product = X^4 + (1,1)\n"));

    let o = run(&["skew", "--config", cfg.to_str().unwrap(), "--op", "companion", "--f", "f"]);
    assert!(stdout(&o).contains("companion matrix:"));
}

#[test]
fn empty_task_list_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "");
    let o = run(&["analyze", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "summary: 0/0 tasks passed\n");
    let o = run(&["analyze", "--config", cfg.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(stdout(&o), "task,kind,label,status,key,value\n");
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for (text, needle) in [
        ("[rings.r]\nkind = \"zmod\"\nm = \n", "line 3"),
        ("[codes.c]\nkind = \"explicit\"\nring = \"nope\"\nlength = 2\n", "unknown ring \"nope\""),
        ("[codes.c]\nkind = \"dual\"\nof = \"c\"\n", "refers back to itself"),
        ("[rings.r]\nkind = \"zmod\"\nm = 4\n[maps.s]\nring = \"r\"\nkind = \"table\"\nvalues = [\"0\", \"1\", \"1\", \"1\"]\n", "maps.s"),
    ] {
        let cfg = write_config(&dir, text);
        let o = run(&["analyze", "--config", cfg.to_str().unwrap()]);
        let err = String::from_utf8_lossy(&o.stderr);
        assert_eq!(o.status.code(), Some(2), "{text}: {err}");
        assert!(err.contains(needle), "{err}");
    }
    let o = run(&["analyze", "--config", "/nonexistent/ws.toml"]);
    assert_eq!(o.status.code(), Some(2));
    // subcommands that read a workspace refuse to run without one
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
}

#[test]
fn task_failures_are_isolated() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        r#"
[rings.z4]
kind = "zmod"
m = 4

[codes.c]
kind = "explicit"
ring = "z4"
generators = [["2", "0"]]

[[tasks]]
kind = "analyze"
code = "missing"

[[tasks]]
kind = "analyze"
code = "c"
expect = { distance = 2 }

[[tasks]]
kind = "analyze"
code = "c"
expect = { cardinality = 2 }
"#,
    );
    let o = run(&["analyze", "--config", cfg.to_str().unwrap()]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(1));
    assert!(text.contains("task 1 analyze missing: ERROR"));
    assert!(text.contains("task 2 analyze c: FAIL"));
    assert!(text.contains("note: expected distance = 2, got 1"));
    assert!(text.contains("task 3 analyze c: PASS"));
}

#[test]
fn budget_exhaustion_is_reported_per_task() {
    let cfg = worked();
    let o = run(&[
        "analyze", "--config", cfg.to_str().unwrap(), "--code", "skew_mpc", "--budget", "10",
    ]);
    let text = stdout(&o);
    assert!(text.contains("  distance = skipped\n"), "{text}");
    assert!(text.contains("note: enumeration budget exceeded"));
    assert!(text.contains("  freeness = free of rank 4\n"));
}

#[test]
fn verify_examples_passes_and_reports_the_investigation() {
    let o = run(&["verify-examples"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    for case in [
        "f3xf3-skew-product",
        "f3xf3-generator-matrices",
        "f3xf3-self-dual-mpc",
        "gf4-frobenius-codes",
        "gf4-fixed-codes",
        "gf4-mixed-mpc",
        "z20-scaled-dual",
        "z4-row-codes",
    ] {
        assert!(text.contains(&format!("  {case} = pass\n")), "{case}");
    }
    assert!(text.contains("  z20-non-free-dual = investigation (computed)\n"));
}

#[test]
fn prop_suites_are_seeded() {
    let a = run(&["prop", "--suite", "bound", "--count", "10", "--seed", "7"]);
    let b = run(&["prop", "--suite", "bound", "--count", "10", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("  bound passed = 10/10\n"));

    let o = run(&["prop", "--count", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("  division passed = 0/0\n"));

    let o = run(&["prop", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn out_flag_and_export_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let matrix = dir.path().join("a.csv");
    let cfg = write_config(
        &dir,
        &format!(
            r#"
[rings.z4]
kind = "zmod"
m = 4

[matrices.a]
ring = "z4"
rows = [["1", "2", "0"], ["0", "2", "1"]]

[[tasks]]
kind = "export"
matrix = "a"
path = "{}"
"#,
            matrix.display()
        ),
    );
    let o = run(&[
        "analyze",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), o.stdout);
    let csv = std::fs::read_to_string(&matrix).unwrap();
    assert_eq!(csv, "rows,cols,ring\n2,3,Z_4\n1,2,0\n0,2,1\n");
}
