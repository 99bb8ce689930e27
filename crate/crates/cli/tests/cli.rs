use std::io::Write;
use std::process::{Command, Output};

fn cvect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvect")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn membership_of_euler_field() {
    let o = cvect(&["membership", "--field", "d"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for n in 1..=6 {
        assert!(out.lines().any(|l| l.starts_with(&format!("E{n} ")) && l.ends_with("pass")), "{out}");
    }
    assert!(out.lines().any(|l| l.starts_with("E7 ") && l.ends_with("fail")), "{out}");
    assert!(out.contains("member: no"));
}

#[test]
fn cvect_variant_accepts_euler_field() {
    let out = stdout(&cvect(&["membership", "--variant", "cvect", "--field", "d"]));
    assert!(out.contains("member: yes"), "{out}");
}

#[test]
fn prolong_table() {
    let o = cvect(&["prolong", "--input", "vect03", "--max-degree", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["-1", "(4|3)"]), "{out}");
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["0", "(12|12)"]), "{out}");
}

#[test]
fn prolong_json_rows() {
    let out = stdout(&cvect(&["--json", "prolong", "--input", "cvect03", "--max-degree", "0"]));
    let rows: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows[0]["input"], "cvect03");
    assert_eq!(rows[2]["degree"], 0);
    assert_eq!(rows[2]["even"], 13);
    assert_eq!(rows[2]["odd"], 12);
}

#[test]
fn constant_pairs_commute() {
    let o = cvect(&["bracket", "--left", "(0,u1)", "--right", "(0,x1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(0, 0)");
}

#[test]
fn field_bracket() {
    let out = stdout(&cvect(&["bracket", "--left", "Du1", "--right", "u1*Dy"]));
    assert_eq!(out.trim(), "Dy");
}

#[test]
fn embeddings_print_fields() {
    let out = stdout(&cvect(&["i2", "--poly", "u1*x1"]));
    assert_eq!(out.trim(), "-u1*Du1 + y*Dy + x1*Dx1");
    let out = stdout(&cvect(&["alpha", "--poly", "u1*x1"]));
    assert_eq!(out.trim(), "Dy");
}

#[test]
fn decompose_json_record() {
    let out = stdout(&cvect(&["--json", "decompose", "--field", "x1*Dx1 - u1*Du1 + y*Dy"]));
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["f"], "0");
    assert_eq!(v["g"], "u1*x1");
}

#[test]
fn divergence_of_euler_field() {
    let out = stdout(&cvect(&["--json", "div", "--field", "d"]));
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["poly"], "1");
}

#[test]
fn realize_round_trip() {
    let field = stdout(&cvect(&["realize", "--pair", "(u1*x2, x1*x2*x3)"]));
    let pair = stdout(&cvect(&["decompose", "--field", field.trim()]));
    let back = stdout(&cvect(&["realize", "--pair", pair.trim()]));
    assert_eq!(field, back);
}

#[test]
fn table_matches_oracle() {
    let o = cvect(&["table", "--f", "u2*x2*x3 + u1*x1*x2", "--h", "u1^2*u3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle: match"));
}

#[test]
fn file_input_one_result_per_line() {
    let mut file = tempfile_path("polys");
    writeln!(file.1, "u1*x1\nx1*x2\n\nu2").unwrap();
    let out = stdout(&cvect(&["--json", "--file", file.0.to_str().unwrap(), "regrade"]));
    assert_eq!(out.lines().count(), 3);
    let _ = std::fs::remove_file(&file.0);
    file = tempfile_path("pairs");
    writeln!(file.1, "u1 ; u2\nx1*x2 ; u1*x3").unwrap();
    let out = stdout(&cvect(&["--file", file.0.to_str().unwrap(), "buttin"]));
    assert_eq!(out.lines().count(), 2);
    let _ = std::fs::remove_file(&file.0);
}

fn tempfile_path(tag: &str) -> (std::path::PathBuf, std::fs::File) {
    let path = std::env::temp_dir().join(format!("cvect-cli-{tag}-{}", std::process::id()));
    let f = std::fs::File::create(&path).unwrap();
    (path, f)
}

#[test]
fn usage_and_domain_errors_exit_2() {
    assert_eq!(cvect(&["nonsense"]).status.code(), Some(2));
    assert_eq!(cvect(&["i1"]).status.code(), Some(2));
    assert_eq!(cvect(&["i1", "--poly", "x1^2"]).status.code(), Some(2));
    assert_eq!(cvect(&["prolong", "--input", "nope"]).status.code(), Some(2));
    assert_eq!(cvect(&["decompose", "--field", "y^2*Dy"]).status.code(), Some(2));
}

#[test]
fn parse_error_reports_position() {
    let o = cvect(&["regrade", "--poly", "u1 + * u2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 5"));
}
