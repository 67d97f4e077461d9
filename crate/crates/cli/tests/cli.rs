use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric3"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn mindist_both_agrees() {
    let o = run(&[
        "mindist", "--q", "5", "--poly", "T(1,2)", "--method", "both",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("formula: 46"), "{out}");
    assert!(out.contains("brute: 46"), "{out}");
    assert!(out.trim_end().ends_with("OK"), "{out}");
}

#[test]
fn mindist_formula_only() {
    let o = run(&[
        "mindist", "--q", "5", "--poly", "P22", "--method", "formula",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("formula: 36"));
    let o = run(&[
        "mindist", "--q", "5", "--poly", "P32(1,1)", "--method", "formula",
    ]);
    assert!(stdout(&o).contains("formula: [45, 46]"));
}

#[test]
fn mindist_without_formula() {
    let o = run(&[
        "mindist", "--q", "5", "--poly", "W2:1", "--method", "formula",
    ]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no closed-form distance"));
    // brute force still works for the same family
    let o = run(&["mindist", "--q", "5", "--poly", "W2:1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("brute: "));
}

#[test]
fn mindist_verbose_dumps_matrix() {
    let o = run(&[
        "mindist",
        "--q",
        "3",
        "--poly",
        "[(0,0,0);(1,0,0)]",
        "--method",
        "brute",
        "-v",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("generator matrix"), "{out}");
    assert!(out.contains("0 0 0 0 1 1 1 1"), "{out}");
}

#[test]
fn parse_and_collision_errors_are_usage_errors() {
    assert_eq!(code(&run(&["mindist", "--q", "5", "--poly", "T(2,4)"])), 2);
    assert_eq!(
        code(&run(&["mindist", "--q", "5", "--poly", "nonsense"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "mindist",
            "--q",
            "3",
            "--poly",
            "[(0,0,0);(2,0,0)]"
        ])),
        2
    );
    assert_eq!(code(&run(&["mindist", "--q", "5"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn equiv_tetrahedra() {
    let o = run(&["equiv", "--q", "5", "--a", "T(1,2)", "--b", "T(3,2)"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("agreement: yes"), "{out}");
    assert!(out.trim_end().ends_with("EQUIVALENT"), "{out}");
}

#[test]
fn equiv_signatures() {
    let o = run(&["equiv", "--q", "5", "--a", "P22", "--b", "P31"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).trim_end().ends_with("INEQUIVALENT"));
}

#[test]
fn equiv_reports_theorem_counterexample() {
    // The closed-form rule calls these inequivalent, but a row swap plus a
    // column permutation and scaling maps one generator matrix to the other.
    let o = run(&["equiv", "--q", "13", "--a", "T(1,9)", "--b", "T(2,9)", "-v"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("theorem: INEQUIVALENT"), "{out}");
    assert!(out.contains("witness: EQUIVALENT"), "{out}");
    assert!(out.contains("row order: [0, 1, 3, 2]"), "{out}");
    assert!(out.contains("agreement: NO"), "{out}");
}

#[test]
fn equiv_single_method() {
    let o = run(&[
        "equiv", "--q", "7", "--a", "T(1,2)", "--b", "T(2,3)", "--method", "theorem",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).trim_end().ends_with("INCONCLUSIVE"));
    let o = run(&[
        "equiv", "--q", "7", "--a", "T(1,2)", "--b", "T(2,3)", "--method", "witness",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("min_distance: 178 vs 171"));
    let o = run(&["equiv", "--q", "5", "--a", "T(1,2)", "--b", "P22"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn census_json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = run(&[
            "census",
            "--q",
            "5",
            "--dim",
            "4",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    let params: Vec<(i64, i64)> = rows
        .iter()
        .map(|r| (r["s"].as_i64().unwrap(), r["t"].as_i64().unwrap()))
        .collect();
    assert_eq!(params, [(0, 1), (1, 2), (1, 3), (2, 3)]);
    assert_eq!(rows[1]["d_brute"], 46);
    assert_eq!(rows[1]["d_formula_lower"], 46);
    assert!(rows.iter().all(|r| r["theorem_agrees"] == true));
    assert_eq!(doc["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn census_csv() {
    let o = run(&["census", "--q", "5", "--dim", "4", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "q,family,s,t,n,k,d_formula_lower,d_formula_upper,d_brute,class_id,theorem_agrees"
    );
    assert_eq!(lines.next().unwrap(), "5,T,0,1,64,4,48,48,48,0,true");
    assert_eq!(lines.count(), 3);
}

#[test]
fn census_width_one_writes_then_fails_on_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let o = run(&[
        "census",
        "--q",
        "7",
        "--dim",
        "5",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("mismatch: P22 vs P32(1,5)"));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("7,P22,,,216,5,150,150,150,")));
    assert!(text.lines().any(|l| l.starts_with("7,P31,,,216,5,")));
}

#[test]
fn census_rejects_bad_field() {
    assert_eq!(code(&run(&["census", "--q", "6", "--dim", "4"])), 2);
    assert_eq!(code(&run(&["census", "--q", "5", "--dim", "6"])), 2);
}

#[test]
fn verify_runs_suite() {
    let o = run(&["verify", "--q", "4", "--threads", "1"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("q=4    dim4-formula       PASS"), "{out}");
    assert!(out.contains("all checks passed"));
    assert_eq!(code(&run(&["verify", "--q", "6"])), 2);
}

#[test]
fn verify_reports_failures() {
    let o = run(&["verify", "--q", "5"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("q=5    dim4-concordance   PASS"), "{out}");
    assert!(out.contains("q=5    dim5-concordance   FAIL"), "{out}");
}

#[test]
fn field_info() {
    let o = run(&["field-info", "--q", "8", "-v"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("GF(8) = GF(2^3)"), "{out}");
    assert!(out.contains("modulus: x^3 + x + 1"), "{out}");
    // α^3 = α + 1
    assert!(out.contains("1 2 4 3 6 7 5"), "{out}");
    assert!(out.contains("0 -> -inf"), "{out}");
}
