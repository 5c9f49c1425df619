use std::process::{Command, Output};

fn pinch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pinch")).args(args).output().unwrap()
}

fn write(dir: &tempfile::TempDir, body: &str) -> String {
    let path = dir.path().join("run.toml");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn successful_run_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "[system]\nd_x = 20.0\n[sweep]\nvalues = [90.0, 100.0]\nm_values = [2, 3]\n");
    let out_dir = dir.path().join("out");
    let out = pinch(&["outage", "--config", &cfg, "--out-dir", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out_dir.join("outage_m2.dat").exists());
    assert!(out_dir.join("outage_m3.dat").exists());

    let out = pinch(&["rate", "--continuous", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("metric = \"continuous_rate\""));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 2);
}

#[test]
fn simulate_overrides_land_in_the_header() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "[system]\nd_x = 10.0\n[sweep]\nvalues = [90.0]\nm_values = [2]\n");
    let out = pinch(&["simulate", "-c", &cfg, "--quantity", "rate", "--seed", "42", "--samples", "5000"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# seed = 42"));
    assert!(text.contains("# samples = 5000"));
    assert!(text.contains("quantity = \"rate\""));
}

#[test]
fn configuration_problems_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "[system]\nd_x = 20.0\nalpha = -1.0\n[sweep]\nvalues = [90.0]\nm_values = [2]\n");
    let out = pinch(&["rate", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha"));

    assert_eq!(pinch(&["rate", "--config", "/nonexistent/run.toml"]).status.code(), Some(1));
    let cfg = write(&dir, "[system]\nd_x = 20.0\n[sweep]\nvalues = [90.0]\nm_values = [2]\n");
    assert_eq!(pinch(&["simulate", "-c", &cfg, "--samples", "10"]).status.code(), Some(1));
    assert_eq!(pinch(&["run", "-c", &cfg]).status.code(), Some(1));
    assert_eq!(pinch(&["--help"]).status.code(), Some(0));
    assert_eq!(pinch(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn numerical_trouble_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    // Attenuation this strong drives the far PA gain below the double range.
    let cfg = write(&dir, "[system]\nd_x = 20.0\nalpha = 50.0\n[sweep]\nmetric = \"pde\"\nvalues = [90.0]\nm_values = [2]\n");
    let out = pinch(&["run", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("underflow"));
}
