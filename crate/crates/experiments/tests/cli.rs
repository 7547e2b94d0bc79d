use std::process::Command;

fn workbench() -> Command {
    Command::new(env!("CARGO_BIN_EXE_workbench"))
}

#[test]
fn passing_run_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = workbench()
        .args(["identities", "--n", "2", "--ell", "2", "--seed", "3", "--samples", "40", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("identities.csv").exists());
    assert!(dir.path().join("identities.manifest.json").exists());
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("run.conf");
    std::fs::write(&file, "# small run\nsamples = 7\nseed = 9\n").unwrap();
    let out = workbench().args(["identities", "--seed", "11", "--config"]).arg(&file).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("identities.manifest.json")).unwrap()).unwrap();
    assert_eq!(json["config"]["samples"], 7);
    assert_eq!(json["config"]["seed"], 11);
}

#[test]
fn bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = workbench().args(["identities", "--n", "3", "--out"]).arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = workbench().args(["nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = workbench().args(["identities", "--mode", "fast"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
