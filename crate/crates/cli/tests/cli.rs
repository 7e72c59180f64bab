use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_emhd25d"))
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str], cwd: &Path) -> Output {
    bin().args(args).current_dir(cwd).output().expect("binary runs")
}

fn text(out: &Output) -> String {
    format!("{}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
}

#[test]
fn check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["check"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", text(&out));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.lines().filter(|l| l.contains(" pass ")).count(), 5, "{stdout}");
}

#[test]
fn invalid_beta_exits_with_validation_code() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "[model]\nbeta = 3.6\nwobble = 1\n").unwrap();
    let out = run(&["ic", "-c", cfg.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let msg = text(&out);
    assert!(msg.contains("3 < beta < 4 - 2*alpha"), "{msg}");
    assert!(msg.contains("wobble"), "{msg}");
}

#[test]
fn missing_config_exits_with_validation_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["run", "-c", "nowhere.toml"], dir.path());
    assert_eq!(out.status.code(), Some(1), "{}", text(&out));
}

#[test]
fn ic_and_approx_write_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("quick.toml");
    let out = run(&["ic", "-c", cfg.to_str().unwrap(), "-o", "ic"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", text(&out));
    let norms = fs::read_to_string(dir.path().join("ic/ic_norms.csv")).unwrap();
    assert!(norms.starts_with("time,a0_Hdot0,"), "{norms}");
    let snap = fs::read(dir.path().join("ic/ic.bin")).unwrap();
    assert_eq!(&snap[..8], b"EMHD25D1");
    assert_eq!(u32::from_le_bytes(snap[32..36].try_into().unwrap()), 2);

    let out = run(&["approx", "-c", cfg.to_str().unwrap(), "-o", "ap", "--time", "0.001"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", text(&out));
    assert!(dir.path().join("ap/approx_norms.csv").exists());
    assert!(dir.path().join("ap/approx.bin").exists());
}

#[test]
fn short_run_writes_report_series_and_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("quick.toml");
    let out = run(&["run", "-c", cfg.to_str().unwrap(), "-o", "r"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", text(&out));
    let report = fs::read_to_string(dir.path().join("r/report.csv")).unwrap();
    for key in ["R_a", "R_abar", "max_b", "err_rel", "status"] {
        assert!(report.lines().any(|l| l.starts_with(&format!("{key},"))), "{key} missing:\n{report}");
    }
    let series = fs::read_to_string(dir.path().join("r/series.csv")).unwrap();
    assert!(series.starts_with("time,"));
    assert!(series.lines().count() > 2);
    for name in ["snapshot_t0.bin", "snapshot_tend.bin"] {
        let bytes = fs::read(dir.path().join("r").join(name)).unwrap();
        assert_eq!(&bytes[..8], b"EMHD25D1");
    }

    let again = run(&["run", "-c", cfg.to_str().unwrap(), "-o", "r2"], dir.path());
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(series, fs::read_to_string(dir.path().join("r2/series.csv")).unwrap());
}

#[test]
fn out_dir_from_config_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["ic", "-c", configs().join("quick.toml").to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", text(&out));
    assert!(dir.path().join("out/quick/ic_norms.csv").exists());
}
