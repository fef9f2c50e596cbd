use std::fs;
use std::path::PathBuf;
use std::process::Command;

use qbic_cli::{run, CliError, RunConfig};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn json(path: &std::path::Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn code(r: Result<qbic_cli::Outcome, CliError>) -> i32 {
    match r {
        Ok(o) => o.exit_code,
        Err(e) => e.exit_code(),
    }
}

#[test]
fn gaussian_fit_matches_normal_equations() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    let o = run([
        "qbic", "fit", "--data", &fixture("ols10.csv"), "--family", "gaussian", "--out-dir", &out,
    ])
    .unwrap();
    assert_eq!(o.exit_code, 0);
    let v = json(&dir.path().join("fit.json"));
    let theta: Vec<f64> = v["theta_hat"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    // numpy.linalg.solve(X'X, X'y) on the same file.
    let ols = [0.6084754126160421, 1.6314338644362985, -0.8091559180484389];
    for (a, b) in theta.iter().zip(ols) {
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
    assert!((v["loglik"].as_f64().unwrap() - 9.387068242222849).abs() < 1e-9);
    assert!(o.stdout.contains("x1"));
}

#[test]
fn symmetric_logit_fit_is_zero() {
    let o = run(["qbic", "fit", "--data", &fixture("symmetric.csv"), "--family", "logit"]).unwrap();
    assert_eq!(o.exit_code, 0);
    assert!(o.stdout.contains("0.0000"), "{}", o.stdout);
}

#[test]
fn missing_file_exits_2_and_names_path() {
    let r = run(["qbic", "fit", "--data", "/nonexistent/data.csv"]);
    let Err(e) = r else { panic!("expected failure") };
    assert_eq!(e.exit_code(), 2);
    assert!(e.to_string().contains("/nonexistent/data.csv"));
}

#[test]
fn singular_candidates_exit_3() {
    assert_eq!(code(run(["qbic", "select", "--data", &fixture("zero.csv")])), 3);
}

#[test]
fn unsupported_oracle_dimension_exits_4() {
    assert_eq!(code(run(["qbic", "oracle", "--p", "4"])), 4);
}

#[test]
fn separated_fit_reports_numerical_failure() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("sep.csv");
    fs::write(&p, "y,x\n0,-1\n0,-2\n1,1\n1,2\n").unwrap();
    let o = run(["qbic", "fit", "--data", p.to_str().unwrap()]).unwrap();
    assert_eq!(o.exit_code, 5);
    assert!(o.stdout.contains("not converged"));
}

#[test]
fn select_recovers_model_10_on_seeded_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.csv");
    run(["qbic", "gen", "--scenario", "paper1", "--n", "500", "--seed", "3", "--out", data.to_str().unwrap()]).unwrap();
    let out = dir.path().join("sel");
    let o = run([
        "qbic", "select", "--data", data.to_str().unwrap(), "--out-dir", out.to_str().unwrap(),
    ])
    .unwrap();
    assert!(o.stdout.contains("selected model 10 (x2,x4)"), "{}", o.stdout);
    let v = json(&out.join("select.json"));
    assert_eq!(v["winner"], 10);
    assert_eq!(v["candidates"].as_array().unwrap().len(), 15);
    let csv = fs::read_to_string(out.join("select.csv")).unwrap();
    assert_eq!(csv.lines().count(), 16);
}

#[test]
fn single_column_select_has_one_row() {
    let o = run(["qbic", "select", "--data", &fixture("symmetric.csv")]).unwrap();
    assert!(o.stdout.starts_with("1 candidates"), "{}", o.stdout);
}

#[test]
fn simulate_is_byte_identical_across_runs_and_threads() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for (dir, threads) in [(&a, "1"), (&b, "2")] {
        run([
            "qbic", "simulate", "--scenario", "paper1", "--n", "50,60", "--reps", "8", "--seed", "9", "--threads", threads,
            "--out-dir", dir.path().to_str().unwrap(),
        ])
        .unwrap();
    }
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 5);
    for n in names {
        assert_eq!(fs::read(a.path().join(&n)).unwrap(), fs::read(b.path().join(&n)).unwrap(), "{n:?}");
    }
}

#[test]
fn single_replication_twice_is_identical() {
    let a = run(["qbic", "simulate", "--scenario", "paper3", "--n", "100", "--reps", "1", "--seed", "4"]).unwrap();
    let b = run(["qbic", "simulate", "--scenario", "paper3", "--n", "100", "--reps", "1", "--seed", "4"]).unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        "seed = 5\n[simulate]\nscenario = \"paper2\"\nn = [60]\nreps = 4\n[oracle]\nfamily = \"gaussian\"\np = 2\n",
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let from_file = run(["qbic", "--config", c, "simulate"]).unwrap();
    assert!(from_file.stdout.starts_with("probit-ar  n = 60  (4 replications)"), "{}", from_file.stdout);
    let overridden = run(["qbic", "--config", c, "simulate", "--reps", "3", "--n", "70"]).unwrap();
    assert!(overridden.stdout.starts_with("probit-ar  n = 70  (3 replications)"));
    let oracle = run(["qbic", "--config", c, "oracle", "--n", "80"]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&oracle.stdout).unwrap();
    assert_eq!((v["family"].as_str(), v["p"].as_u64(), v["n"].as_u64(), v["seed"].as_u64()), (Some("gaussian"), Some(2), Some(80), Some(5)));
}

#[test]
fn config_rejects_unknown_keys() {
    assert!(RunConfig::from_toml("seed = 1\nbogus = 2\n").is_err());
    assert!(RunConfig::from_toml("[fit]\nmax_iters = 3\n").is_err());
    let ok = RunConfig::from_toml("[fit]\nmax_iter = 3\nfamily = \"poisson\"\n").unwrap();
    assert_eq!(ok.fit.max_iter, Some(3));
}

#[test]
fn unknown_names_exit_4() {
    assert_eq!(code(run(["qbic", "simulate", "--scenario", "paper9", "--n", "50"])), 4);
    assert_eq!(
        code(run(["qbic", "select", "--data", &fixture("ols10.csv"), "--criterion", "hqc"])),
        4
    );
}

#[test]
fn gen_round_trips_through_fit() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(["qbic", "gen", "--scenario", "lag-chain", "--n", "40", "--out-dir", dir.path().to_str().unwrap()]).unwrap();
    let file = &o.files[0];
    assert!(file.ends_with("lag-chain_n40_seed1.csv"));
    let header = fs::read_to_string(file).unwrap().lines().next().unwrap().to_string();
    assert!(header.starts_with("y,z_lag0,z_lag1"));
    run(["qbic", "fit", "--data", file.to_str().unwrap(), "--columns", "z_lag0"]).unwrap();
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_qbic"))
        .args(["oracle", "--p", "1", "--n", "60"])
        .env(qbic_cli::OUT_DIR_ENV, dir.path())
        .output()
        .unwrap();
    assert!(status.status.success());
    assert!(dir.path().join("oracle_logit_p1_n60_seed1.json").exists());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qbic");
    let st = Command::new(bin).args(["fit", "--data", "/nonexistent.csv"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&st.stderr).contains("/nonexistent.csv"));
    let st = Command::new(bin).args(["oracle", "--p", "4"]).output().unwrap();
    assert_eq!(st.status.code(), Some(4));
    let st = Command::new(bin).args(["--help"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let st = Command::new(bin).args(["fit", "--bogus"]).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
}
