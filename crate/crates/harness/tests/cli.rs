use std::process::Command;

fn bdqmc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bdqmc"))
}

#[test]
fn run_writes_csv_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = bdqmc()
        .args(["run", "--option", "1,4", "--s", "3", "--M", "0.3", "--m-lo", "4", "--m-hi", "7"])
        .args(["--replicates", "4", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("results.csv")).unwrap();
    assert_eq!(csv.lines().count(), 9);
    let svg = std::fs::read_to_string(dir.path().join("convergence.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 2);
}

#[test]
fn config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"option": 2, "s": 3, "M": 0.25, "m_range": [4, 6], "replicates": 3, "seed": 5}"#,
    )
    .unwrap();
    let from_file = bdqmc().args(["run", "--config"]).arg(&cfg).output().unwrap();
    let from_flags = bdqmc()
        .args(["run", "--option", "2", "--s", "3", "--M", "0.25", "--m-lo", "4", "--m-hi", "6"])
        .args(["--replicates", "3", "--seed", "5"])
        .output()
        .unwrap();
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, from_flags.stdout);
    assert!(String::from_utf8_lossy(&from_file.stdout).starts_with("option,s,M,m,n,"));
}

#[test]
fn validation_errors_exit_with_two() {
    let bad_preset = bdqmc().args(["run", "--option", "12", "--s", "3", "--M", "0"]).output().unwrap();
    assert_eq!(bad_preset.status.code(), Some(2));
    let bad_growth = bdqmc()
        .args(["run", "--option", "1", "--s", "3", "--M", "0.7", "--m-lo", "4", "--m-hi", "5"])
        .output()
        .unwrap();
    assert_eq!(bad_growth.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_growth.stderr).contains("`M`"));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"option": 1, "s": 3}"#).unwrap();
    let bad_json = bdqmc().args(["run", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(bad_json.status.code(), Some(2));
}

#[test]
fn runtime_errors_exit_with_one() {
    let missing = bdqmc()
        .args(["run", "--option", "1", "--s", "3", "--M", "0", "--m-lo", "4", "--m-hi", "5"])
        .args(["--dirs", "/nonexistent/table"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn data_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    let table = "d       s       a       m_i\n2       1       0       1\n3       2       1       1 3\n";
    std::fs::write(dir.path().join("new-joe-kuo-6.21201"), table).unwrap();
    let run = |env: Option<&std::path::Path>, s: &str| {
        let mut cmd = bdqmc();
        cmd.args(["run", "--option", "5", "--s", s, "--M", "0.2", "--m-lo", "3", "--m-hi", "3", "--replicates", "2"]);
        cmd.env_remove("BDQMC_DATA_DIR");
        if let Some(d) = env {
            cmd.env("BDQMC_DATA_DIR", d);
        }
        cmd.output().unwrap()
    };
    let small = run(Some(dir.path()), "3");
    assert!(small.status.success(), "{}", String::from_utf8_lossy(&small.stderr));
    assert_eq!(small.stdout, run(None, "3").stdout);
    assert_eq!(run(Some(dir.path()), "4").status.code(), Some(2));
}

#[test]
fn audit_and_check_net() {
    let audit = bdqmc()
        .args(["audit-walsh", "--theta-list", "0.1,0.3", "--p", "1", "--k-max", "256"])
        .output()
        .unwrap();
    assert!(audit.status.success());
    assert!(String::from_utf8_lossy(&audit.stdout).contains("violations: 0"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("audit.csv");
    let audit = bdqmc()
        .args(["audit-walsh", "--theta-list", "0.2", "--k-max", "16", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(audit.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("theta,p,k,coeff,bound,ratio\n"));
    assert_eq!(text.lines().count(), 17);

    let pass = bdqmc().args(["check-net", "--s", "2", "--m", "8", "--t", "0"]).output().unwrap();
    assert!(pass.status.success());
    let fail = bdqmc().args(["check-net", "--s", "3", "--m", "6", "--t", "0"]).output().unwrap();
    assert_eq!(fail.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&fail.stdout).contains("minimal t = 1"));
}

#[test]
fn slope_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let mut text = String::from("option,s,M,m,n,rmse,mean_estimate,replicates,seed,failures\n");
    for m in 4..10 {
        text.push_str(&format!("1,5,0.0,{m},{},{},1.0,30,1,0\n", 1u64 << m, (-f64::from(m)).exp2()));
    }
    std::fs::write(&csv, text).unwrap();
    let out = bdqmc().args(["slope", "--csv"]).arg(&csv).args(["--m-lo", "4", "--m-hi", "9"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("option 1: slope -1.0000"));
    let out = bdqmc().args(["slope", "--csv"]).arg(&csv).args(["--m-lo", "4", "--m-hi", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
