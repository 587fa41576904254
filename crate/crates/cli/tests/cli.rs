use std::path::PathBuf;
use std::process::{Command, Output};

use exactcat_cli::format::{DiagramFile, ObjectSpec};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn exactcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exactcat")).args(args).output().expect("binary runs")
}

fn run_fixture(cmd: &str, name: &str, extra: &[&str]) -> (i32, String) {
    let path = fixture(name);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = exactcat(&args);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("exactcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn homology_of_surfaces() {
    assert_eq!(run_fixture("homology", "circle.ex", &[]), (0, "H0 = Z, H1 = Z\n".into()));
    assert_eq!(run_fixture("homology", "torus.ex", &[]), (0, "H0 = Z, H1 = Z^2, H2 = Z\n".into()));
    assert_eq!(run_fixture("homology", "rp2.ex", &[]), (0, "H0 = Z, H1 = Z/2, H2 = 0\n".into()));
}

#[test]
fn snake_prints_connecting_map() {
    let (code, out) = run_fixture("snake", "snake_mod2.ex", &[]);
    assert_eq!(code, 0);
    assert!(out.contains("delta: Z -> Z/2, matrix [1]\n"), "{out}");
    assert!(out.contains("verified: yes"));

    let (code, out) = run_fixture("snake", "snake_zero_delta.ex", &[]);
    assert_eq!(code, 0);
    assert!(out.contains("C2 = Z/6\n"), "{out}");
    assert!(out.contains("delta: 0 -> Z/2"), "{out}");
}

#[test]
fn snake_names_the_failing_square() {
    let out = exactcat(&["snake", fixture("snake_noncommuting.ex").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("left square"), "{err}");
}

#[test]
fn pointed_snake_verifies() {
    let (code, out) = run_fixture("snake", "snake_pointed.ex", &[]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("K1 = *2\n"));
}

#[test]
fn verify_reports_the_failing_joint() {
    let (code, out) = run_fixture("verify", "verify_mod4.ex", &[]);
    assert_eq!(code, 1);
    assert!(out.contains("exact at B: no"), "{out}");
    assert_eq!(run_fixture("verify", "verify_mod2.ex", &[]).0, 0);
}

#[test]
fn les_of_reduction() {
    let (code, out) = run_fixture("les", "les_mod.ex", &[]);
    assert_eq!(code, 0);
    assert!(out.contains("degree 1: H(A) = Z/2, H(A') = Z/4, H(A'') = Z/2"), "{out}");
    assert!(out.contains("long exact: yes"));
}

#[test]
fn machine_output_parses_and_reverifies() {
    for (cmd, name, seq) in [
        ("snake", "snake_mod2.ex", "six-term"),
        ("snake", "snake_pointed.ex", "six-term"),
        ("les", "les_mod.ex", "les"),
    ] {
        let (code, out) = run_fixture(cmd, name, &["--format", "machine"]);
        assert_eq!(code, 0);
        let file = DiagramFile::parse(&out).unwrap_or_else(|e| panic!("{name}: {e}\n{out}"));
        assert!(file.sequences.contains_key(seq));
        let text = format!("{out}verify {seq}\n");
        let path = temp_file(&format!("{name}.machine"), &text);
        let again = exactcat(&["verify", path.to_str().unwrap()]);
        assert_eq!(again.status.code(), Some(0), "{name}");
    }
}

#[test]
fn machine_homology_round_trips_groups() {
    let (code, out) = run_fixture("homology", "torus.ex", &["--format", "machine"]);
    assert_eq!(code, 0);
    let file = DiagramFile::parse(&out).unwrap();
    let ObjectSpec::Group(h1) = &file.objects["H1"] else { panic!("not a group") };
    assert_eq!(h1.to_string(), "Z^2");
}

#[test]
fn input_errors_exit_2() {
    let bad = temp_file("bad.ex", "instance fgab\nobject A = Q\n");
    assert_eq!(exactcat(&["homology", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(exactcat(&["homology", "/nonexistent/file.ex"]).status.code(), Some(2));
    let wrong = temp_file("wrong-command.ex", "instance fgab\nobject A = Z\nsequence s =\nverify s\n");
    assert_eq!(exactcat(&["snake", wrong.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn non_complex_exits_3() {
    let text = "instance fgab\nobject A = Z\nmap d : A -> A = 1x1 [1]\ncomplex X from 0 objects A A A maps d d\nhomology X\n";
    let path = temp_file("d2.ex", text);
    let out = exactcat(&["homology", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn axioms_exit_codes() {
    let out = exactcat(&["axioms", "--deflations", "all-surjections", "--max-size", "3", "--only", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("axiom 1: FAIL"));

    let out = exactcat(&["axioms", "--budget", "10", "--only", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("INCONCLUSIVE"));

    let out = exactcat(&["axioms", "--instance", "fgab", "--samples", "20", "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let file = DiagramFile::parse(&text).unwrap();
    assert_eq!(file.verdicts["axiom-4a"], "PASS");
}
