use std::path::PathBuf;
use std::process::{Command, Output};

use ybmesh::io::{parse_mesh, parse_solution, read_catalog};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn ybmesh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybmesh")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn reparses_as_solution(text: &str) {
    let b = parse_solution(text).unwrap().birack().unwrap();
    assert!(b.braid().holds());
}

#[test]
fn check_properties() {
    let cases = [
        ("rack4.lqt", "2reductive", 0),
        ("rack4.lqt", "distributive", 0),
        ("rack4.lqt", "lri", 0),
        ("rack4.lqt", "medial", 0),
        ("twisted4.lqt", "2reductive", 1),
        ("twisted4.lqt", "2permutational", 0),
        ("twisted4.lqt", "right-cyclic", 0),
        ("twisted4.lqt", "distributive", 1),
        ("twisted4.lqt", "braid", 0),
        ("twisted4.lqt", "involutive", 0),
        ("twisted4.lqt", "lri", 1),
        ("level3.lqt", "2permutational", 1),
        ("level3.lqt", "idempotent", 1),
        ("onesided4.lqt", "right-cyclic", 0),
        ("onesided4.lqt", "non-degenerate", 0),
        ("onesided4.lqt", "distributive", 1),
        ("rack4.lqt", "star", 0),
    ];
    for (file, prop, expected) in cases {
        let o = ybmesh(&["check", &data(file), "--property", prop]);
        assert_eq!(code(&o), expected, "{file} {prop}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o).trim(), if expected == 0 { "true" } else { "false" });
    }
}

#[test]
fn braid_on_raw_tables_reports_false() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.lqt");
    // rack4 with the bullet of twisted4: tables in range but not a solution
    std::fs::write(&f, "n 4\n0 1 2 3\n2 3 0 1\n0 1 2 3\n2 3 0 1\nbullet\n3 1 3 1\n2 0 2 0\n1 3 1 3\n0 2 0 2\n")
        .unwrap();
    let o = ybmesh(&["check", f.to_str().unwrap(), "--property", "braid"]);
    assert_eq!(code(&o), 1);
    let o = ybmesh(&["check", f.to_str().unwrap(), "--property", "2reductive"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn invalid_input_exits_two() {
    let o = ybmesh(&["check", &data("broken.lqt"), "--property", "braid"]);
    assert_eq!(code(&o), 2);
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);
    assert_eq!(code(&ybmesh(&["check", &data("missing.lqt"), "--property", "braid"])), 2);
    assert_eq!(code(&ybmesh(&["check", &data("rack4.lqt"), "--property", "purple"])), 2);
    assert_eq!(code(&ybmesh(&["frobnicate"])), 2);
    assert_eq!(code(&ybmesh(&["enumerate", "--kind", "quandles", "--size", "3"])), 2);
    assert_eq!(code(&ybmesh(&["enumerate", "--kind", "all-involutive", "--size", "9"])), 2);
    // mirror of onesided4 is not right cyclic, so no bullet can be derived
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("mirror.lqt");
    std::fs::write(&f, "n 4\n0 1 3 2\n3 2 0 1\n2 3 1 0\n1 0 2 3\n").unwrap();
    assert_eq!(code(&ybmesh(&["level", f.to_str().unwrap()])), 2);
    let o = ybmesh(&["check", f.to_str().unwrap(), "--property", "right-cyclic"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn level_and_retract() {
    let o = ybmesh(&["level", &data("twisted4.lqt")]);
    assert_eq!((code(&o), stdout(&o).trim().to_string()), (0, "2".to_string()));
    let o = ybmesh(&["level", &data("level3.lqt")]);
    assert_eq!(stdout(&o).trim(), "3");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ret.lqt");
    let o = ybmesh(&["retract", &data("twisted4.lqt"), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    reparses_as_solution(&text);
    assert!(text.starts_with("n 2\n"));
}

#[test]
fn enumerate_counts() {
    let o = ybmesh(&["enumerate", "--kind", "2reductive", "--size", "4", "--count-only"]);
    assert_eq!((code(&o), stdout(&o)), (0, "17\n".to_string()));
    let o = ybmesh(&["enumerate", "--kind", "racks", "--size", "4", "--count-only", "--jobs", "2"]);
    assert_eq!(stdout(&o), "19\n");
}

#[test]
fn enumerate_catalog_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l2.cat");
    let o = ybmesh(&["enumerate", "--kind", "level2-nondistributive", "--size", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let entries = read_catalog(&text).unwrap();
    assert_eq!(entries.len(), 5);
    for e in &entries {
        assert!(e.birack.as_ref().unwrap().braid().holds());
    }
    // schedule independence
    let again = ybmesh(&["enumerate", "--kind", "level2-nondistributive", "--size", "5", "--jobs", "1"]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn isotope_and_to_distributive() {
    let o = ybmesh(&["isotope", &data("rack4.lqt"), "--perm", "1 0 3 2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    reparses_as_solution(&text);
    let t = parse_solution(&text).unwrap();
    let expected = parse_solution(&std::fs::read_to_string(data("twisted4.lqt")).unwrap()).unwrap();
    assert_eq!(t, expected);

    let o = ybmesh(&["isotope", &data("rack4.lqt"), "--perm", "1 0 2 3"]);
    assert_eq!(code(&o), 2);
    let o = ybmesh(&["isotope", &data("rack4.lqt"), "--perm", "1 0 2"]);
    assert_eq!(code(&o), 2);

    let o = ybmesh(&["to-distributive", &data("twisted4.lqt"), "--element", "0"]);
    assert_eq!(code(&o), 0);
    let back = parse_solution(&stdout(&o)).unwrap();
    let nie = parse_solution(&std::fs::read_to_string(data("rack4.lqt")).unwrap()).unwrap();
    assert_eq!(back.circ, nie.circ);
    assert_eq!(code(&ybmesh(&["to-distributive", &data("level3.lqt"), "--element", "0"])), 2);
}

#[test]
fn iso_exit_codes() {
    let o = ybmesh(&["iso", &data("twisted4.lqt"), &data("twisted4.lqt")]);
    assert_eq!(code(&o), 0);
    let o = ybmesh(&["iso", &data("twisted4.lqt"), &data("gamma.lqt")]);
    assert_eq!(code(&o), 1);
    let o = ybmesh(&["iso", &data("twisted4.lqt"), &data("z2z1.mesh")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn sum_and_iyb() {
    let o = ybmesh(&["sum", &data("z2z1.mesh")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    reparses_as_solution(&text);
    assert!(text.starts_with("n 3\n1 0 2\n1 0 2\n0 1 2\n"));

    let dir = tempfile::tempdir().unwrap();
    let mesh = dir.path().join("g.mesh");
    let o = ybmesh(&["iyb", "--group", "2,4", "--out", mesh.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let m = parse_mesh(&std::fs::read_to_string(&mesh).unwrap()).unwrap();
    assert_eq!(m.size(), 16);
    let o = ybmesh(&["sum", mesh.to_str().unwrap()]);
    reparses_as_solution(&stdout(&o));

    let o = ybmesh(&["iyb", "--group", "4", "--generators", "2"]);
    assert_eq!(code(&o), 2);
    let o = ybmesh(&["iyb", "--group", "2,3"]);
    assert_eq!(code(&o), 2);
    let o = ybmesh(&["iyb", "--group", ""]);
    assert_eq!(code(&o), 0);
}

#[test]
fn tables_first_five_columns() {
    let o = ybmesh(&["tables", "--max-n", "5"]);
    assert_eq!(code(&o), 0);
    let expected = "\
# racks
n            1  2  3   4   5
racks        1  2  6  19  74
2-reductive  1  2  5  17  65

# involutive solutions
n                         1  2  3   4   5
involutive                1  2  5  23  88
level 2                   1  2  5  19  70
2-reductive               1  2  5  17  65
level 2, not 2-reductive  0  0  0   2   5
";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn work_limit_exits_three() {
    let o = Command::new(env!("CARGO_BIN_EXE_ybmesh"))
        .args(["enumerate", "--kind", "all-involutive", "--size", "5", "--count-only"])
        .env("YBMESH_WORK_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn help_exits_zero() {
    let o = ybmesh(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("enumerate"));
}
