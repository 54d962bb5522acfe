use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shockline"))
}

fn scratch(name: &str) -> PathBuf {
    let d = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

const SMALL: &str = "# tiny run\nseed = 5\nalpha = 0.3\nn = 5\nt = 10\nm = 0, 1\ntrials = 4000\nxi_m0 = -2, -1\nxi_m1 = -3, -2\n";

#[test]
fn writes_report_tables_and_exit_code() {
    let dir = scratch("finite");
    std::fs::write(dir.join("run.conf"), SMALL).unwrap();
    let out = dir.join("out");
    let status = bin().args(["finite-kernel", "--config"]).arg(dir.join("run.conf")).arg("--out").arg(&out).output().unwrap().status;
    assert!(status.success());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(json["experiment"], "finite-kernel");
    assert_eq!(json["verdict"], true);
    assert_eq!(json["config"]["seed"], "5");
    let csv = std::fs::read_to_string(out.join("finite_kernel.csv")).unwrap();
    assert!(csv.starts_with("n,t,alpha,m,xi,value,error_estimate,condition_number"));
}

#[test]
fn same_seed_gives_identical_csv_across_thread_counts() {
    let dir = scratch("determinism");
    std::fs::write(dir.join("run.conf"), SMALL).unwrap();
    let run = |out: &str, threads: &str| {
        let o = dir.join(out);
        assert!(bin().args(["finite-kernel", "--config"]).arg(dir.join("run.conf")).args(["--threads", threads, "--out"]).arg(&o).output().unwrap().status.success());
        std::fs::read(o.join("finite_kernel.csv")).unwrap()
    };
    assert_eq!(run("a", "1"), run("b", "3"));
    let o = dir.join("c");
    bin().args(["finite-kernel", "--config"]).arg(dir.join("run.conf")).args(["--seed", "6", "--out"]).arg(&o).output().unwrap().status;
    assert_ne!(run("a", "1"), std::fs::read(o.join("finite_kernel.csv")).unwrap());
}

#[test]
fn failing_verdict_and_bad_config_exit_nonzero() {
    let dir = scratch("failing");
    // A 3-sigma check with 40 trials and an impossible tolerance.
    std::fs::write(dir.join("run.conf"), SMALL.replace("trials = 4000", "trials = 40\nse_multiple = 0")).unwrap();
    let s = bin().args(["finite-kernel", "--config"]).arg(dir.join("run.conf")).arg("--out").arg(dir.join("o")).output().unwrap().status;
    assert_eq!(s.code(), Some(1));

    std::fs::write(dir.join("noseed.conf"), SMALL.replace("seed = 5\n", "")).unwrap();
    let s = bin().args(["finite-kernel", "--config"]).arg(dir.join("noseed.conf")).arg("--out").arg(dir.join("o")).output().unwrap().status;
    assert_eq!(s.code(), Some(2));

    let s = bin().args(["finite-kernel", "--config"]).arg(dir.join("missing.conf")).output().unwrap().status;
    assert_eq!(s.code(), Some(2));
}

#[test]
fn trials_flag_overrides_config() {
    let dir = scratch("override");
    std::fs::write(dir.join("run.conf"), SMALL).unwrap();
    let o = dir.join("o");
    assert!(bin().args(["finite-kernel", "--config"]).arg(dir.join("run.conf")).args(["--trials", "2000", "--out"]).arg(&o).output().unwrap().status.success());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(o.join("report.json")).unwrap()).unwrap();
    assert_eq!(json["config"]["trials"], "2000");
}
