use std::fs;
use std::process::{Command, Output};

fn solvcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solvcoh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn catalog_lists_entries() {
    let o = solvcoh(&["catalog"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for name in ["sec4_1", "heisenberg3", "borel_G2", "filiform5", "s7", "random0"] {
        assert!(out.contains(name), "missing {name}");
    }
}

#[test]
fn analyze_reports_structure() {
    let o = solvcoh(&["analyze", "sec4_1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("nilradical   dim 3"));
    assert!(out.contains("nilpotent    false"));

    let o = solvcoh(&["analyze", "heisenberg3"]);
    assert!(stdout(&o).contains("nilpotent    true"));
}

#[test]
fn malformed_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trunc.json");
    fs::write(&path, "{\"dim\": 2,\n \"basis\": [\"a\"").unwrap();
    let o = solvcoh(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("parse error at line 2"));
}

#[test]
fn algebra_file_roundtrip_through_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    fs::write(&path, r#"{"dim": 3, "basis": ["x", "y", "z"], "brackets": [[1, 2, [[3, "1"]]]]}"#).unwrap();
    let o = solvcoh(&["cohomology", path.to_str().unwrap(), "--dims-only"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for line in ["H^0 = 1", "H^1 = 2", "H^2 = 2", "H^3 = 1"] {
        assert!(out.contains(line), "missing {line}");
    }
}

#[test]
fn cohomology_with_character() {
    let o = solvcoh(&["cohomology", "sec4_1", "--character", "1,0,0,0", "--dims-only"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for line in ["H^0 = 0", "H^1 = 2", "H^2 = 2", "H^3 = 0", "H^4 = 0"] {
        assert!(out.contains(line), "missing {line}");
    }

    let o = solvcoh(&["cohomology", "sec4_1", "--character", "0,0,0,0", "--degree", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("H^0 = 1"));

    let o = solvcoh(&["cohomology", "sec4_1", "--character", "1,0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("dimension mismatch"));
}

#[test]
fn size_guard_rejects_large_algebras() {
    let o = solvcoh(&["cohomology", "abelian(17)", "--dims-only"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("too large"));
}

#[test]
fn gamma_text_and_json() {
    let o = solvcoh(&["gamma", "sec4_1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("p = 2  TH = 4"));
    assert!(out.contains("(3, 0, 0, 0)  dim 2"));

    let o = solvcoh(&["gamma", "sec4_1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "gamma");
}

#[test]
fn nilshadow_certificate() {
    let o = solvcoh(&["nilshadow", "sec4_1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("[x, y] = 1 z"));
    assert!(out.contains("TH      1 3 4 3 1"));
    assert!(out.contains("Betti   1 3 4 3 1"));
}

#[test]
fn deform_grid_keeps_total_cohomology() {
    let o = solvcoh(&["deform", "sec4_1", "--grid=-1:1:1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("consistent true"));
    assert_eq!(out.matches("TH = 1 3 4 3 1").count(), 3);
}

#[test]
fn borel_polytope_grid_and_csv() {
    let o = solvcoh(&["borel", "A2", "--polytope"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("|W| = 6"));
    assert!(out.contains("  1 | 1*  .  2  . 1*"));

    let o = solvcoh(&["borel", "G2", "--format", "csv"]);
    let csv = stdout(&o);
    assert!(csv.starts_with("h1,h2,multiplicity,is_gamma_vertex\n"));
    assert_eq!(csv.lines().count(), 1 + 31);

    let o = solvcoh(&["borel", "B2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kostant"]["weyl_order"], 8);

    let o = solvcoh(&["borel", "D4"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn filiform_diagram() {
    let o = solvcoh(&["filiform", "4", "--grid"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Betti(f_4) 1 2 3 4 3 2 1"));

    let o = solvcoh(&["filiform", "3", "--gamma"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("TH(s_3)"));
}

#[test]
fn corpus_single_member_passes() {
    let o = solvcoh(&["corpus", "--catalog", "sec4_1", "--no-global"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("corpus: pass"));
}

#[test]
fn corpus_flags_corrupted_structure_constants() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        r#"{"dim": 4, "basis": ["X","x","y","z"],
            "brackets": [[1,2,[[2,"1"]]],[1,3,[[3,"1"]]],[1,4,[[4,"1"]]],[2,3,[[4,"1"]]]]}"#,
    )
    .unwrap();
    let o = solvcoh(&["corpus", "--catalog", "sec4_1", "--input", path.to_str().unwrap(), "--no-global"]);
    assert_eq!(code(&o), 3);
    let out = stdout(&o);
    assert!(out.contains("Jacobi identity fails on basis triple (1, 2, 3)"));
    assert!(out.contains("corpus: FAIL"));
}

#[test]
fn empty_corpus_is_a_vacuous_pass() {
    let o = solvcoh(&["corpus", "--catalog", "", "--no-global"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("vacuous") || stdout(&o).contains("vacuous"));
}

#[test]
fn output_independent_of_width() {
    let args = |w: &'static str| ["corpus", "--catalog", "sec4_1,sec4_2,random1,borel_A2", "--no-global", "--width", w, "--format", "json"];
    let a = solvcoh(&args("1"));
    let b = solvcoh(&args("4"));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&solvcoh(&["bogus"])), 1);
    assert_eq!(code(&solvcoh(&["cohomology"])), 1);
    assert_eq!(code(&solvcoh(&["--help"])), 0);
}

#[test]
fn unknown_catalog_entry() {
    let o = solvcoh(&["analyze", "nosuch"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unknown catalog entry"));
}
