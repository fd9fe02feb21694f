use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use tropfactor::arith::linalg;
use tropfactor::io;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropfactor")).args(args).output().expect("binary runs")
}

fn run_with(args: &[&str], files: &[&str]) -> Output {
    let mut all: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    all.extend(files.iter().map(|f| data(f).display().to_string()));
    let refs: Vec<&str> = all.iter().map(String::as_str).collect();
    run(&refs)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn table(text: &str) -> Vec<(String, Vec<u8>)> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace();
            (it.next().unwrap().to_string(), it.map(|x| x.parse().unwrap()).collect())
        })
        .collect()
}

/// Splits a CSV line on commas outside double quotes.
fn fields(line: &str) -> Vec<String> {
    let (mut out, mut cur, mut quoted) = (Vec::new(), String::new(), false);
    for c in line.chars() {
        match c {
            '"' => quoted = !quoted,
            ',' if !quoted => out.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    out.push(cur);
    out
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<(String, Vec<u8>)>) {
    let mut lines = text.lines();
    let header = fields(lines.next().unwrap());
    let rows = lines
        .map(|l| {
            let f = fields(l);
            (f[0].clone(), f[1..].iter().map(|x| x.parse().unwrap()).collect())
        })
        .collect();
    (header, rows)
}

#[test]
fn divide_with_a_solution() {
    let out = run_with(&["divide"], &["solution_f.json", "solution_g.json"]);
    assert_eq!(out.status.code(), Some(0));
    let h = io::polynomial_from_json(&json(&out)).unwrap();
    let exps: Vec<Vec<i64>> = h.reduced().terms().map(|(e, _)| e.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
    assert_eq!(exps, vec![vec![0, 0], vec![1, 1]]);
}

#[test]
fn divide_tent_reports_the_negative_cell() {
    let out = run_with(&["divide"], &["tent_f.json", "tent_g.json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["error"], "NegativeWeight");
    assert_eq!(v["witness"]["weight"], 1);
    assert_eq!(v["witness"]["extended"], 2);
    assert_eq!(v["witness"]["deficit"], -1);
}

#[test]
fn divide_uncontained_is_negative() {
    let out = run_with(&["divide"], &["tent_g.json", "solution_g.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "NotContained");
}

#[test]
fn wmatrix_csv_reproduces_the_tables() {
    let (h2, r2) = csv_rows(&String::from_utf8(run(&["wmatrix", "--n", "2", "--format", "csv"]).stdout).unwrap());
    assert_eq!(h2, ["partition", "{1,2}", "{2,3}", "{1,3}", "{1,2,3}"]);
    let mut want = table(include_str!("../../validation/tests/fixtures/w_n2.txt"));
    let mut got = r2.clone();
    want.sort();
    got.sort();
    assert_eq!(got, want);
    let (h3, r3) = csv_rows(&String::from_utf8(run(&["wmatrix", "--n", "3"]).stdout).unwrap());
    assert_eq!(h3.len(), 12);
    assert_eq!(r3, table(include_str!("../../validation/tests/fixtures/w_n3.txt")));
}

#[test]
fn wmatrix_json_and_bounds() {
    let v = json(&run(&["wmatrix", "--n", "3", "--format", "json"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 36);
    assert_eq!(v["cols"].as_array().unwrap().len(), 11);
    assert_eq!(run(&["wmatrix", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["wmatrix", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn defcone_facets_and_membership() {
    let v = json(&run(&["defcone", "--n", "2"]));
    assert_eq!(v["facets"].as_array().unwrap().len(), 6);
    let inside = run(&["defcone", "--n", "2", "--y", r#"{"12":2,"123":1,"-12":1}"#]);
    assert_eq!(inside.status.code(), Some(0));
    assert_eq!(json(&inside)["inside"], true);
    let outside = run(&["defcone", "--n", "2", "--y", r#"{"12":1,"123":-1}"#]);
    assert_eq!(outside.status.code(), Some(1));
    assert_eq!(json(&outside)["error"], "NotInCone");
    assert_eq!(run(&["defcone", "--n", "2", "--y", r#"{"15":1}"#]).status.code(), Some(2));
}

#[test]
fn coxeter_b2_basis_and_expansion() {
    let v = json(&run(&["coxeter", "--type", "B2", "--basis"]));
    assert_eq!(v["labels"].as_array().unwrap().len(), 8);
    assert_eq!(v["group_order"], 8);
    assert_eq!(v["basis"]["vectors"].as_array().unwrap().len(), v["rank"].as_u64().unwrap() as usize);
    for p in ["p1.json", "p2.json"] {
        let out = run_with(&["coxeter", "--type", "B2", "--expand"], &[p]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        let vectors: Vec<Vec<_>> = v["basis"]["vectors"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r.as_array().unwrap().iter().map(|x| io::scalar_from_json(x).unwrap()).collect())
            .collect();
        let coef: Vec<_> = v["coefficients"].as_array().unwrap().iter().map(|x| io::scalar_from_json(x).unwrap()).collect();
        let weights: Vec<_> = v["weights"].as_array().unwrap().iter().map(|x| io::scalar_from_json(x).unwrap()).collect();
        let mut sum = linalg::zeros(8);
        for (r, c) in vectors.iter().zip(&coef) {
            sum = linalg::axpy(&sum, c, r);
        }
        assert_eq!(sum, weights);
    }
    assert_eq!(run(&["coxeter", "--type", "G2"]).status.code(), Some(2));
}

#[test]
fn factor_and_maximal_factorizations() {
    let out = run_with(&["factor"], &["trapezoid.json", "triangle.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(run_with(&["factor"], &["triangle.json", "trapezoid.json"]).status.code(), Some(1));
    let all = json(&run_with(&["factor", "--maximal"], &["octagon.json"]));
    assert_eq!(all["factorizations"].as_array().unwrap().len(), 3);
}

#[test]
fn cone_cap_comes_from_the_environment() {
    let capped = Command::new(env!("CARGO_BIN_EXE_tropfactor"))
        .env("TROPFACTOR_MAX_CONES", "4")
        .args(["factor", "--maximal", data("octagon.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert_eq!(json(&capped)["witness"]["cap"], 4);
}

#[test]
fn basis_and_expand() {
    let v = json(&run_with(&["basis"], &["octagon.json"]));
    assert_eq!(v["rank"], 6);
    assert_eq!(v["fan"]["weights"].as_array().unwrap().len(), 8);
    let q = data("p1.json").display().to_string();
    let p = data("octagon.json").display().to_string();
    let e = run(&["expand", &q, "--fan-of", &p]);
    assert_eq!(e.status.code(), Some(0));
    let v = json(&e);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 6);
    assert_eq!(run(&["expand", &p, "--fan-of", &q]).status.code(), Some(1));
}

#[test]
fn schema_errors_exit_two() {
    for f in ["float.json", "extra_key.json", "missing.json"] {
        let out = run_with(&["factor"], &[f, "triangle.json"]);
        assert_eq!(out.status.code(), Some(2), "{f}");
    }
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn plots_are_deterministic_svg() {
    let a = run_with(&["plot"], &["solution_g.json"]);
    let b = run_with(&["plot"], &["solution_g.json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let svg = String::from_utf8(a.stdout).unwrap();
    assert!(svg.starts_with("<svg") && svg.matches("<line").count() == 5);
    let star = String::from_utf8(run_with(&["plot"], &["octagon.json"]).stdout).unwrap();
    assert_eq!(star.matches("<line").count(), 8);
    let dot = String::from_utf8(run_with(&["plot"], &["point.json"]).stdout).unwrap();
    assert_eq!((dot.matches("<circle").count(), dot.matches("<line").count()), (1, 0));
    let dotted = String::from_utf8(run_with(&["plot", "--divisor"], &["solution_g.json", "solution_f.json"]).stdout).unwrap();
    assert!(dotted.contains("stroke-dasharray"));
    assert_eq!(run_with(&["plot"], &["plane.json"]).status.code(), Some(2));
}

#[test]
fn output_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("tropfactor-w-{}.csv", std::process::id()));
    let out = run(&["wmatrix", "--n", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("partition,"));
    let _ = std::fs::remove_file(path);
}

#[test]
fn selftest_prints_a_table() {
    let out = run(&["selftest"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS  division with a solution"));
    assert!(text.contains("PASS  W for n=3 equals the reference table in order"));
    assert_eq!(out.status.code(), Some(if text.contains("FAIL") { 1 } else { 0 }));
}
