use std::path::Path;
use std::process::{Command, Output};

fn weakspin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weakspin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn header_value(text: &str, key: &str) -> f64 {
    let prefix = format!("# {key} = ");
    let line = text
        .lines()
        .find(|l| l.starts_with(&prefix))
        .unwrap_or_else(|| panic!("no {key}"));
    line[prefix.len()..]
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap()
}

fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn weak_curves_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.csv");
    let o = weakspin(&["weak-curves", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(header_value(&text, "theta"), 2.9);
    let r = rows(&text);
    assert_eq!(r.len(), 629);
    assert_eq!(r[0][0].parse::<f64>().unwrap(), 0.0);
    assert_eq!(r[0][2].parse::<f64>().unwrap(), 0.0);
    assert!((r[0][1].parse::<f64>().unwrap() - 1.45f64.tan()).abs() < 1e-12);
}

#[test]
fn weak_curves_theta_zero_and_bad_steps() {
    let o = weakspin(&["weak-curves", "--theta", "0", "--steps", "101"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(rows(&text).iter().all(|r| {
        let re: f64 = r[1].parse().unwrap();
        re == 0.0 || re.is_nan()
    }));

    let o = weakspin(&["weak-curves", "--steps", "1"]);
    assert!(!o.status.success());
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
}

#[test]
fn simulate_default_and_zero_field() {
    let o = weakspin(&["simulate"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let dw = header_value(&text, "displacement");
    assert!((dw - 17e-6).abs() < 0.3e-6, "{dw}");
    assert!((header_value(&text, "limit") - 0.37).abs() < 1e-12);
    assert_eq!(rows(&text).len(), 4096);

    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "zero.cfg",
        "sigma = 0.5e-6\nflight_distance = 2.5\nbeam_velocity = 1717\ndbdz = 0\n",
    );
    let o = weakspin(&["simulate", "--config", &cfg]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let r = rows(&text);
    let peak = r
        .iter()
        .map(|r| r[2].parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    for row in &r {
        let (a, b): (f64, f64) = (row[1].parse().unwrap(), row[2].parse().unwrap());
        assert!((a - b).abs() <= 1e-10 * peak);
    }
    assert!(header_value(&text, "mean_exact").abs() < 1e-12);
}

#[test]
fn simulate_velocity_ordering() {
    let dir = tempfile::tempdir().unwrap();
    let mut means = Vec::new();
    for v in ["900", "1200", "1717"] {
        let cfg = write(
            dir.path(),
            &format!("v{v}.cfg"),
            &format!("sigma = 0.5e-6\nflight_distance = 2.5\nbeam_velocity = {v}\nlimit = 0.37\n"),
        );
        let o = weakspin(&["simulate", "--config", &cfg]);
        assert!(o.status.success());
        let text = String::from_utf8(o.stdout).unwrap();
        means.push(header_value(&text, "mean_first_order").abs());
    }
    assert!(means[0] > means[1] && means[1] > means[2], "{means:?}");
}

#[test]
fn calibrate_default_and_loose() {
    let o = weakspin(&["calibrate"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let l = header_value(&text, "max_limit");
    assert!((l - 0.37).abs() <= 0.05, "{l}");
    assert_eq!(rows(&text).len(), 150);
    assert!(String::from_utf8(o.stderr).unwrap().contains("L* = 0.37"));

    let o = weakspin(&["calibrate", "--tolerance", "0.5"]);
    let loose = header_value(&String::from_utf8(o.stdout).unwrap(), "max_limit");
    assert!(loose > l);

    let o = weakspin(&["calibrate", "--tolerance", "1e-8"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn calibrate_rejects_bad_geometry() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "bad.cfg",
        "sigma = 0\nflight_distance = 2.5\nbeam_velocity = 1750\ndbdz = 0\n",
    );
    let o = weakspin(&["calibrate", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        String::from_utf8(o.stderr)
            .unwrap()
            .trim_end()
            .lines()
            .count(),
        1
    );
}

#[test]
fn plan_outputs() {
    let o = weakspin(&["plan"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!((header_value(&text, "displacement") - 17e-6).abs() < 0.3e-6);
    assert!(text.contains("# resolvable = false"));
    let r = rows(&text);
    let dw: Vec<f64> = r
        .iter()
        .map(|r| r[1].parse::<f64>().unwrap() * 1e6)
        .collect();
    assert!(
        (dw[0] - 33.0).abs() / 33.0 < 0.02 && (dw[1] - 24.0).abs() / 24.0 < 0.02,
        "{dw:?}"
    );

    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "slow.json",
        r#"{"sigma": 0.5e-6, "flight_distance": 2.5, "beam_velocity": 900, "limit": 0.37}"#,
    );
    let o = weakspin(&["plan", "--config", &cfg]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!((header_value(&text, "displacement") - 33e-6).abs() / 33e-6 < 0.02);
    assert!(text.contains("# resolvable = true"));

    let missing = write(
        dir.path(),
        "missing.cfg",
        "sigma = 0.5e-6\nflight_distance = 2.5\nlimit = 0.37\n",
    );
    let o = weakspin(&["plan", "--config", &missing]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .contains("beam_velocity"));
}

#[test]
fn output_is_deterministic() {
    let a = weakspin(&["simulate", "--theta", "2.0"]);
    let b = weakspin(&["simulate", "--theta", "2.0"]);
    assert_eq!(a.stdout, b.stdout);
}
