use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

struct Sandbox {
    dir: TempDir,
}

impl Sandbox {
    fn new() -> Sandbox {
        Sandbox { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_grobzdd")).current_dir(self.dir.path()).args(args).output().unwrap()
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn gb_prints_basis_largest_lead_first() {
    let s = Sandbox::new();
    s.file("sys.txt", "vars x y\norder lp\nx + y\ny\n");
    let o = s.run(&["gb", "sys.txt"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "x\ny\n");
}

#[test]
fn gb_over_z4_keeps_generators() {
    let s = Sandbox::new();
    s.file("sys.txt", "vars x y\n2*x\n2*y\n");
    let o = s.run(&["--mod", "4", "gb", "sys.txt"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "2*x\n2*y\n");
    s.file("hdr.txt", "modulus 4\nvars x y\n2*x\n2*y\n");
    assert_eq!(stdout(&s.run(&["gb", "hdr.txt"])), "2*x\n2*y\n");
}

#[test]
fn gb_output_parses_back_to_itself() {
    let s = Sandbox::new();
    s.file("sys.txt", "vars a b c d\norder dlex\na*b + c\nb*c + d + 1\na + d\n");
    let first = stdout(&s.run(&["gb", "sys.txt"]));
    s.file("again.txt", &format!("vars a b c d\norder dlex\n{first}"));
    assert_eq!(stdout(&s.run(&["gb", "again.txt"])), first);
    assert_eq!(stdout(&s.run(&["gb", "sys.txt"])), first);
}

#[test]
fn sat_exit_codes() {
    let s = Sandbox::new();
    let hole = s.run(&["encode", "hole", "2"]);
    s.file("hole2.txt", &stdout(&hole));
    let o = s.run(&["sat", "hole2.txt"]);
    assert_eq!(o.status.code(), Some(20));
    assert_eq!(stdout(&o), "s UNSATISFIABLE\n");

    s.file("one.txt", "vars x y\nx*y + 1\n");
    let o = s.run(&["sat", "one.txt"]);
    assert_eq!(o.status.code(), Some(10));
    assert_eq!(stdout(&o), "s SATISFIABLE\nv x=1 y=1\n");

    s.file("one.cnf", "c comment\np cnf 2 2\n1 2 0\n-1 0\n");
    let o = s.run(&["sat", "one.cnf"]);
    assert_eq!(o.status.code(), Some(10));
    assert_eq!(stdout(&o), "s SATISFIABLE\nv -1 2 0\n");
}

#[test]
fn sat_on_hole_dimacs_without_preprocessing() {
    let s = Sandbox::new();
    s.file("hole3.cnf", &stdout(&s.run(&["encode", "hole", "3", "--dimacs"])));
    assert_eq!(s.run(&["sat", "hole3.cnf"]).status.code(), Some(20));
    assert_eq!(s.run(&["--conjoin-limit", "0", "sat", "hole3.cnf"]).status.code(), Some(20));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let s = Sandbox::new();
    s.file("bad.txt", "vars x y\nx + \n");
    let o = s.run(&["gb", "bad.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 5"), "{}", stderr(&o));

    s.file("bad.cnf", "p cnf 2 1\n1 7 0\n");
    let o = s.run(&["sat", "bad.cnf"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    s.file("ok.txt", "vars x\nx\n");
    assert_eq!(s.run(&["--order", "nope", "gb", "ok.txt"]).status.code(), Some(2));
}

#[test]
fn missing_file_exits_1() {
    let s = Sandbox::new();
    assert_eq!(s.run(&["gb", "absent.txt"]).status.code(), Some(1));
}

#[test]
fn nf_prints_one_polynomial() {
    let s = Sandbox::new();
    s.file("sys.txt", "vars x y\nx + y\ny\n");
    assert_eq!(stdout(&s.run(&["nf", "sys.txt", "x*y + x + 1"])), "1\n");
    assert_eq!(stdout(&s.run(&["nf", "--raw", "sys.txt", "x"])), "0\n");
}

#[test]
fn interp_reads_point_value_file() {
    let s = Sandbox::new();
    s.file("pv.txt", "vars x y z\n000 0\n011 1\n101 1\n");
    assert_eq!(stdout(&s.run(&["interp", "pv.txt"])), "z\n");
    let simple = stdout(&s.run(&["interp", "--simple", "pv.txt"]));
    assert_eq!(simple, "x*y + x + y\n");
}

#[test]
fn zeros_filters_points() {
    let s = Sandbox::new();
    s.file("sys.txt", "vars x y\nx + y\n");
    s.file("pts.txt", "00\n01\n11\n");
    assert_eq!(stdout(&s.run(&["zeros", "sys.txt", "--points", "pts.txt"])), "11\n00\n");
}

#[test]
fn encode_commands() {
    let s = Sandbox::new();
    s.file("c.txt", "wordlen 2\nsignal a b p\nassign p = a * b\n");
    assert_eq!(stdout(&s.run(&["encode", "circuit", "c.txt"])), "modulus 4\nvars a b p\norder lp\na*b + 3*p\n");
    let bits = stdout(&s.run(&["encode", "circuit", "--bits", "c.txt"]));
    assert!(bits.ends_with("p_0 + a_0*b_0\np_1 + a_1*b_0 + a_0*b_1\n"), "{bits}");
    s.file("f.cnf", "p cnf 2 2\n1 2 0\n-1 0\n");
    assert_eq!(stdout(&s.run(&["encode", "cnf", "f.cnf"])), "vars x1 x2\norder lp\nx1*x2 + x1 + x2 + 1\nx1\n");
    let hole6 = stdout(&s.run(&["encode", "hole", "6", "--dimacs"]));
    assert_eq!(hole6.lines().next(), Some("p cnf 42 133"));
}

#[test]
fn json_reports() {
    let s = Sandbox::new();
    s.file("sys.txt", "vars x y\nx + y\ny\n");
    let o = stdout(&s.run(&["--format", "json", "gb", "sys.txt"]));
    let v: serde_json::Value = serde_json::from_str(o.trim()).unwrap();
    for key in ["command", "instance", "vars", "eqs", "basis_size", "verdict", "seconds"] {
        assert!(v.get(key).is_some(), "missing {key} in {o}");
    }
    assert_eq!(v["basis_size"], 2);
    assert_eq!(v["output"], serde_json::json!(["x", "y"]));

    let o = stdout(&s.run(&["--format", "json", "bench", "--family", "mult", "--sizes", "2,3", "--jobs", "2"]));
    let rows: Vec<serde_json::Value> = o.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["instance"], "mult2x2");
    assert!(rows.iter().all(|r| r["verdict"] == "unsat" && r["basis_size"] == 1));
}

#[test]
fn bench_text_table() {
    let s = Sandbox::new();
    let o = s.run(&["bench", "--family", "hole", "--sizes", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("instance"));
    let row: Vec<&str> = out.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(&row[..5], ["hole3", "12", "22", "1", "unsat"]);
}
