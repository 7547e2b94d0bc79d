use experiments::identities::{run_identities, run_identities_with, IdentityKernel};
use experiments::run::manifest_path;
use experiments::{execute, run_suite, ExperimentConfig, ExperimentError, RunMode, Suite};
use poly_lab::{MonicPoly, Poly, PolyError};

fn flipped_join(parts: &[(MonicPoly, Poly)]) -> Result<(MonicPoly, Poly), PolyError> {
    let (f, g) = poly_lab::crt_join(parts)?;
    Ok((f, g.neg()))
}

#[test]
fn mutant_crt_join_is_caught() {
    let cfg = ExperimentConfig { samples: 50, ..ExperimentConfig::default() };
    let r = run_identities_with(&cfg, &IdentityKernel { crt_join: flipped_join });
    let c = r.check("crt_round_trip").unwrap();
    assert!(c.failures >= 1);
    assert!(!c.reproducers.is_empty());
    assert_eq!(c.reproducers[0].seed, cfg.seed);
    assert!(!r.passed());
}

#[test]
fn empty_ranges_are_a_flagged_noop() {
    let cfg = ExperimentConfig { samples: 0, ..ExperimentConfig::default() };
    let r = run_identities(&cfg);
    assert!(r.is_noop());
    assert!(r.passed());
    assert!(r.notes.iter().any(|n| n.starts_with("no-op")));
}

#[test]
fn manifest_written_on_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig { n: 3, out: dir.path().to_path_buf(), ..ExperimentConfig::default() };
    let m = execute(&cfg).unwrap();
    assert_eq!(m.exit_code, 2);
    assert!(m.error.is_some());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(manifest_path(&cfg)).unwrap()).unwrap();
    assert_eq!(json["schema"], "workbench.manifest/1");
    assert_eq!(json["config"]["n"], 3);
    assert_eq!(json["passed"], false);
}

#[test]
fn exact_only_suite_rejects_mc_mode() {
    let cfg = ExperimentConfig { suite: Suite::OrbitalBound, mode: RunMode::Mc, ..ExperimentConfig::default() };
    let e = run_suite(&cfg).unwrap_err();
    assert!(matches!(e, ExperimentError::Unsupported(_)));
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn failing_suite_exits_one_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig { suite: Suite::Volumes, i_max: 2, k_max: 1, out: dir.path().to_path_buf(), ..ExperimentConfig::default() };
    let m = execute(&cfg).unwrap();
    // the split torus slope check is red at every scale
    assert_eq!(m.exit_code, 1);
    assert_eq!(m.outputs, vec!["volumes.csv".to_string()]);
    let csv = std::fs::read_to_string(dir.path().join("volumes.csv")).unwrap();
    assert!(csv.starts_with("family,k,ov_grss,i,volume,volume_f64,push_max_ov,compact_total\r\n"));
    assert!(csv.contains("split_diag,0,"));
}

#[test]
fn stabilize_at_ell_three() {
    let cfg = ExperimentConfig { suite: Suite::Stabilize, ell: 3, i_max: 2, k_max: 1, ..ExperimentConfig::default() };
    let r = run_suite(&cfg).unwrap();
    assert!(r.passed(), "{:?}", r.checks);
}

#[test]
fn volumes_at_ell_three() {
    let cfg = ExperimentConfig { suite: Suite::Volumes, ell: 3, i_max: 2, k_max: 1, ..ExperimentConfig::default() };
    let r = run_suite(&cfg).unwrap();
    for name in ["elliptic_volumes_saturate", "volumes_nondecreasing", "split_volumes_affine", "alpha_vol_affine"] {
        assert!(r.check(name).unwrap().passed(), "{name}");
    }
}

#[test]
fn mc_mode_stabilize_runs() {
    let cfg = ExperimentConfig { suite: Suite::Stabilize, mode: RunMode::Mc, mc_draws: 2000, i_max: 2, k_max: 1, ..ExperimentConfig::default() };
    let r = run_suite(&cfg).unwrap();
    assert!(r.check("group_stabilizes").is_some());
    assert!(r.table("stabilize").unwrap().rows.iter().all(|row| !row[7].is_empty()));
}
