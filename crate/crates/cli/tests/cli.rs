use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdm-slater")).args(args).output().expect("binary runs")
}

fn configs() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/configs"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn identical_config_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("beta_sweep_3d.json");
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = bin(&["semiclassical", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes, fs::read(&b).unwrap());
    let text = String::from_utf8(bytes).unwrap();
    assert!(text.starts_with("beta,x,C_leading,delta_C,C_semiclassical\n"));
    assert_eq!(text.lines().count(), 1 + 4 * 41);
}

#[test]
fn every_row_adds_up() {
    let cfg = configs().join("pct_gamma06.json");
    let o = bin(&["compare", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "beta,x,C_leading,delta_C,C_semiclassical,C_exact,abs_err,rel_err");
    let mut n = 0;
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        // Cells carry 15 significant digits, so the sum holds to that precision.
        assert!((v[4] - (v[2] + v[3])).abs() <= 1e-14 * v[4].abs().max(v[2].abs()).max(v[3].abs()));
        n += 1;
    }
    assert_eq!(n, 201);
    assert!(String::from_utf8(o.stderr).unwrap().contains("max rel err"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let harmonic = configs().join("harmonic_compare.json");
    let harmonic = harmonic.to_str().unwrap();
    assert_eq!(bin(&["compare", "--config", harmonic]).status.code(), Some(0));
    assert_eq!(bin(&["compare", "--config", harmonic, "--tolerance", "1e-3"]).status.code(), Some(1));

    let bad_gamma = write(dir.path(), "g.json", r#"{"model": {"builtin": "pct", "params": {"gamma": -1}}}"#);
    let o = bin(&["semiclassical", "--config", &bad_gamma]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("gamma"));

    let unknown = write(dir.path(), "u.json", r#"{"model": {"builtin": "morse"}}"#);
    assert_eq!(bin(&["semiclassical", "--config", &unknown]).status.code(), Some(2));
    let malformed = write(dir.path(), "m.json", "{\n\"model\": \n");
    let o = bin(&["semiclassical", "--config", &malformed]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    assert_eq!(bin(&["semiclassical"]).status.code(), Some(2));
    assert_eq!(bin(&["semiclassical", "--config", "/nonexistent.json"]).status.code(), Some(2));
    let wrong_oracle =
        write(dir.path(), "w.json", r#"{"model": {"builtin": "harmonic"}, "compare": {"oracle": "pct-exact"}}"#);
    assert_eq!(bin(&["compare", "--config", &wrong_oracle]).status.code(), Some(2));
}

#[test]
fn exact_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"model": {"builtin": "pct", "params": {"gamma": 0.8}}, "run": {"grid": {"min": -1, "max": 1, "n": 3}},
            "compare": {"oracle": "grid-spectral", "grid": {"min": -10, "max": 10, "n": 2001}}}"#,
    );
    let o = bin(&["exact-pct", "--config", &cfg]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mid: Vec<f64> = text.lines().nth(2).unwrap().split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(mid[1], 0.0);
    assert!((mid[2] - 0.2944042).abs() < 1e-7);

    let o = bin(&["exact-grid", "--config", &cfg]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    // Spectral nodes inside [−1, 1] at spacing 0.01.
    assert_eq!(text.lines().count(), 1 + 201);
    let at0 = text.lines().find(|l| l.split(',').nth(1) == Some("0.00000000000000e0")).unwrap();
    let c: f64 = at0.split(',').nth(2).unwrap().parse().unwrap();
    assert!((c - 0.2944042).abs() < 1e-4);
}

#[test]
fn density_output() {
    let cfg = configs().join("beta_sweep_3d.json");
    let o = bin(&["density", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("lambda,x,V,rho\n"));
    assert_eq!(text.lines().count(), 42);
}

#[test]
fn check_passes() {
    let o = bin(&["check"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 9);
}
