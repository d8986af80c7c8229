use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clifgroups"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON value per line"))
        .collect()
}

#[test]
fn repr_reports_the_additional_signature() {
    let o = run(&["repr", "--p", "1", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("size 2"), "{text}");
    assert!(text.contains("(k,l) = (2,1)"), "{text}");

    let j = json_lines(&run(&["repr", "--p", "1", "--q", "2", "--format", "json"]));
    assert_eq!(j.len(), 1);
    assert_eq!(j[0]["additional_signature"]["k"], 2);
    assert_eq!(j[0]["additional_signature"]["l"], 1);
    assert_eq!(j[0]["size"], 2);
}

#[test]
fn repr_of_the_empty_signature_is_one_by_one() {
    let j = json_lines(&run(&["repr", "--p", "0", "--q", "0", "--format", "json"]));
    assert_eq!(j[0]["size"], 1);
}

#[test]
fn repr_quaternion_units() {
    let text = stdout(&run(&["repr", "--p", "0", "--q", "2"]));
    assert!(text.contains("[ 1i ]") && text.contains("[ 1j ]"), "{text}");
}

#[test]
fn classify_examples() {
    let o = run(&["classify", "--group", "g2", "--p", "4", "--q", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("²O(4,4)"));

    let text = stdout(&run(&[
        "classify", "--group", "spin", "--p", "3", "--q", "0",
    ]));
    assert!(text.contains("Sp(1) (≅SU(2))"), "{text}");

    let j = json_lines(&run(&[
        "classify", "--group", "g23", "--p", "7", "--q", "0", "--format", "json",
    ]));
    assert_eq!(j[0]["name"], "U(8)");
    assert_eq!(j[0]["p"], 7);
    assert_eq!(j[0]["doubled"], false);
    assert!(j[1]["form"].is_object());
}

#[test]
fn classify_with_verification_passes() {
    let o = run(&[
        "classify", "--group", "g12", "--p", "2", "--q", "2", "--verify",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_relat_passes() {
    let o = run(&["verify", "relat", "--n-max", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json_lines(&o);
    let summary = &j.last().unwrap()["summary"];
    assert_eq!(summary["reports"], 27);
    assert_eq!(summary["failed"], 0);
    assert_eq!(summary["seed"], 0);
}

#[test]
fn verify_spin_finds_the_divergence() {
    let o = run(&[
        "verify", "spin", "--n-max", "6", "--seed", "5", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let j = json_lines(&o);
    assert!(j.iter().any(|r| r["status"] == "witness"));
    assert_eq!(j.last().unwrap()["summary"]["seed"], 5);
}

#[test]
fn verify_dims_to_sixteen() {
    assert_eq!(
        run(&["verify", "dims", "--n-max", "16"]).status.code(),
        Some(0)
    );
}

#[test]
fn vee_lists_memberships() {
    let text = stdout(&run(&["vee", "--p", "2", "--q", "0"]));
    assert!(text.contains("order 8"), "{text}");
    assert!(text.contains("+e1 -e1"), "{text}");
}

#[test]
fn samples_are_reproducible() {
    let a = stdout(&run(&[
        "sample", "--group", "g23", "--p", "2", "--q", "1", "--seed", "9",
    ]));
    let b = stdout(&run(&[
        "sample", "--group", "g23", "--p", "2", "--q", "1", "--seed", "9",
    ]));
    assert_eq!(a, b);
    assert!(a.contains("seed 9"));
}

#[test]
fn output_goes_to_a_file() {
    let path = std::env::temp_dir().join(format!("clifgroups-{}.jsonl", std::process::id()));
    let o = run(&[
        "verify",
        "tables",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(written.lines().count() > 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        run(&["classify", "--group", "nope", "--p", "1", "--q", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["repr", "--p", "9", "--q", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "relat", "--tol", "-1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["classify", "--group", "spin", "--p", "6", "--q", "0"])
            .status
            .code(),
        Some(2)
    );
}
