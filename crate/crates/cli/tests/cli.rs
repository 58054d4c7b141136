use std::process::{Command, Output};

fn toroidal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toroidal")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn list_shows_every_recipe() {
    let o = toroidal(&["list"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for r in ["A^(1,1)", "G^(3,3)", "F^(2,2)", "BC^(2,4)", "HT-BC[m=1,N=2]"] {
        assert!(out.contains(r), "{r} missing from\n{out}");
    }
}

#[test]
fn verify_passes_and_prints_checks() {
    let o = toroidal(&["verify", "B^(2,2)", "--rank", "2", "--window", "2", "--samples", "20"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("B2^(2,2) [B2^(2,2)]: pass"), "{out}");
    assert!(out.contains("jacobi(2,3)"));
}

#[test]
fn verify_json_is_machine_readable() {
    let o = toroidal(&["verify", "G2^(1,3)", "--json", "--window", "2", "--samples", "10", "--cocycle", "1,1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v[0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "jacobi(1,1)" && c["status"] == "pass"));
    assert_eq!(v[0]["dims"]["(0,0)"], 14);
}

#[test]
fn failures_and_errors_set_the_exit_code() {
    let dir = std::env::temp_dir().join(format!("toroidal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wrong.toml");
    std::fs::write(
        &path,
        r#"
name = "A1 mislabeled"
rank = 1
family = { tag = "x11", kind = "A", rank = 1, nvars = 2 }
base = { kind = "chevalley", cartan_type = "A", rank = 1 }
sigmas = [{ kind = "torus", scalars = [-1] }, { kind = "identity" }]
expected = [{ grade = [0, 0], dim = 3, modules = [3] }]
"#,
    )
    .unwrap();
    let o = toroidal(&["verify", "A1 mislabeled", "--file", path.to_str().unwrap(), "--window", "2", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));

    let o = toroidal(&["verify", "no such entry"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown catalog entry"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn decompose_and_support_print_tables() {
    let o = toroidal(&["decompose", "BC2^(2,4)"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("fixed algebra: B2"), "{out}");
    assert!(out.contains("(1,2)") && out.contains("[0, 0]:1"));

    let o = toroidal(&["support", "A1^(1,1)*", "--window", "1", "--json"]);
    assert!(o.status.success());
    let points: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!points.as_array().unwrap().is_empty());
}
