//! End-to-end tests of the `coincide` binary: command surface, exit codes,
//! determinism, and batch mode.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coincide"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn machine_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| l.contains(" = ")).collect()
}

const Z4_NEGATION: &str = "\
group M order 4
table
0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2
endtable
group N order 4
table
0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2
endtable
char wM : + - + -
char wN : + + + +
hom f : M -> N : 0 1 2 3
hom g : M -> N : 0 3 2 1
covering : KM { 0 2 } KN { 0 2 }
config
class 0 : labels 0
class 1 : labels 0 1
endconfig
";

fn write_temp(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn validate_accepts_the_worked_fixture() {
    let out = run(&["validate", fixture("worked.inst").to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("ok:"));
}

#[test]
fn validate_rejects_garbage_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(dir.path(), "broken.inst", "group M order 2\ntable\n0 1\n");
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classes_reports_two_classes_on_the_negation_instance() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(dir.path(), "z4.inst", Z4_NEGATION);
    let out = run(&["--machine", "classes", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("classes: 2"), "{text}");
    let lines = machine_lines(&text);
    assert!(lines.contains(&"class.0.size = 2"));
    assert!(lines.contains(&"class.1.size = 2"));
}

#[test]
fn type_command_prints_the_map_type() {
    let out = run(&[
        "type",
        fixture("worked.inst").to_str().unwrap(),
        "--machine",
    ]);
    assert!(out.status.success());
    assert!(machine_lines(&stdout(&out)).contains(&"pair.type = III"));
}

#[test]
fn semiindex_reports_essential_count() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(dir.path(), "z4.inst", Z4_NEGATION);
    let out = run(&["--machine", "semiindex", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines = machine_lines(&text);
    assert!(lines.contains(&"class.0.semiindex = 1"));
    assert!(lines.contains(&"class.1.semiindex = 0"), "{text}");
    assert!(lines.contains(&"nielsen.down = 1"));
}

#[test]
fn lift_requires_a_covering() {
    let dir = tempfile::tempdir().unwrap();
    let no_covering = Z4_NEGATION
        .lines()
        .filter(|l| !l.starts_with("covering"))
        .collect::<Vec<_>>()
        .join("\n");
    let path = write_temp(dir.path(), "flat.inst", &no_covering);
    let out = run(&["lift", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lift_reports_fiber_data() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(dir.path(), "z4.inst", Z4_NEGATION);
    let out = run(&["--machine", "lift", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines = machine_lines(&text);
    assert!(lines.contains(&"class.0.lift.T = 2"), "{text}");
    assert!(lines.contains(&"class.0.lift.k = 1"));
    assert!(lines.contains(&"class.0.lift.classes = 2"));
    assert!(lines.contains(&"class.0.lift.formula = 1 1"));
    assert!(lines.contains(&"class.0.lift.oracle = 1 1"));
}

#[test]
fn doublecover_splits_and_merges() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(dir.path(), "z4.inst", Z4_NEGATION);
    let out = run(&["--machine", "doublecover", path.to_str().unwrap()]);
    assert!(out.status.success());
    let lines_owned = stdout(&out);
    let lines = machine_lines(&lines_owned);
    assert!(lines.contains(&"nielsen.down = 1"));
    assert!(lines.contains(&"nielsen.up = 2"));
}

#[test]
fn verify_worked_fixture_matches_the_golden_machine_report() {
    let out = run(&[
        "verify",
        "--machine",
        fixture("worked.inst").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let machine: String = text
        .lines()
        .filter(|l| l.contains(" = "))
        .map(|l| format!("{l}\n"))
        .collect();
    let golden = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/worked.machine"),
    )
    .unwrap();
    assert_eq!(machine, golden);
}

#[test]
fn verify_output_is_byte_stable() {
    let a = run(&[
        "verify",
        "--machine",
        fixture("worked.inst").to_str().unwrap(),
    ]);
    let b = run(&[
        "verify",
        "--machine",
        fixture("worked.inst").to_str().unwrap(),
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gen_is_deterministic_and_parseable() {
    let a = run(&["gen", "--seed", "7", "--max-order", "8"]);
    let b = run(&["gen", "--seed", "7", "--max-order", "8"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(dir.path(), "gen.inst", &stdout(&a));
    let out = run(&["validate", path.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn gen_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for seed in [0, 1, 2, 3] {
        let gen = run(&["gen", "--seed", &seed.to_string(), "--max-order", "8"]);
        let path = write_temp(dir.path(), &format!("s{seed}.inst"), &stdout(&gen));
        let out = run(&["verify", path.to_str().unwrap()]);
        assert!(out.status.success(), "seed {seed}");
    }
}

#[test]
fn emitted_instances_verify_identically() {
    // Parsing the canonical emission of an instance yields the same machine
    // report as the original under every command.
    let dir = tempfile::tempdir().unwrap();
    let gen = run(&["gen", "--seed", "23"]);
    let original = write_temp(dir.path(), "orig.inst", &stdout(&gen));
    let parsed = coincidence_cli::instance::Instance::parse(&stdout(&gen)).unwrap();
    let emitted = write_temp(dir.path(), "emitted.inst", &parsed.to_text());
    for cmd in ["classes", "semiindex", "lift", "verify"] {
        let a = run(&["--machine", cmd, original.to_str().unwrap()]);
        let b = run(&["--machine", cmd, emitted.to_str().unwrap()]);
        let a_text = stdout(&a);
        let b_text = stdout(&b);
        assert_eq!(machine_lines(&a_text), machine_lines(&b_text), "{cmd}");
    }
}

#[test]
fn batch_mode_merges_reports_in_filename_order() {
    let dir = tempfile::tempdir().unwrap();
    for seed in [11, 5] {
        let gen = run(&["gen", "--seed", &seed.to_string()]);
        write_temp(dir.path(), &format!("seed{seed:02}.inst"), &stdout(&gen));
    }
    write_temp(dir.path(), "ignored.txt", "not an instance");
    let out = run(&["--machine", "verify", "--batch", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let first = text.find("seed05").unwrap();
    let second = text.find("seed11").unwrap();
    assert!(first < second, "{text}");
    assert!(machine_lines(&text)
        .iter()
        .any(|l| l.starts_with("seed05.pair.type = ")));
}

#[test]
fn batch_mode_flags_broken_files_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run(&["gen", "--seed", "1"]);
    write_temp(dir.path(), "good.inst", &stdout(&gen));
    write_temp(dir.path(), "bad.inst", "nonsense\n");
    let out = run(&["verify", "--batch", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_needs_a_file_or_batch() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn machine_output_is_identical_across_commands_reruns() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(dir.path(), "z4.inst", Z4_NEGATION);
    for cmd in ["classes", "semiindex", "lift", "doublecover", "verify"] {
        let a = run(&["--machine", cmd, path.to_str().unwrap()]);
        let b = run(&["--machine", cmd, path.to_str().unwrap()]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        assert!(a.status.success(), "{cmd}");
    }
}
