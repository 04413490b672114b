use std::path::Path;
use std::process::{Command, Output};

fn bandlimit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bandlimit"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// `# key=value` footer lookup.
fn footer(text: &str, key: &str) -> f64 {
    let prefix = format!("{key}=");
    text.lines()
        .filter(|l| l.starts_with('#'))
        .flat_map(|l| l.split_whitespace())
        .find_map(|w| w.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {key} in output"))
        .parse()
        .unwrap()
}

fn rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

fn sin_samples(dir: &Path) {
    let o = bandlimit(
        &["sample", "--reference", "sin", "--h", "1.5707963267948966", "--first", "-6000", "--last", "6000", "-o", "sin.csv"],
        dir,
    );
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn differentiate_sin_against_cos() {
    let dir = tempfile::tempdir().unwrap();
    sin_samples(dir.path());
    let o = bandlimit(&["differentiate", "-i", "sin.csv", "--order", "1", "--tol", "1e-3", "--from", "-5", "--to", "5", "--reference", "sin"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("# bandlimit "));
    assert!(footer(&out, "max_error_vs_sin") <= 1e-3);
    assert!(footer(&out, "max_tail_bound") <= 1e-3);
    for r in rows(&out) {
        assert!((r[1] - r[0].cos()).abs() <= r[2]);
    }
}

#[test]
fn order_zero_echoes_samples() {
    let dir = tempfile::tempdir().unwrap();
    sin_samples(dir.path());
    let o = bandlimit(&["differentiate", "-i", "sin.csv", "--order", "0", "--tol", "1e-2", "--from", "-4", "--to", "4"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for r in rows(&stdout(&o)) {
        assert_eq!(r[1], r[0].sin());
    }
}

#[test]
fn input_and_tolerance_errors() {
    let dir = tempfile::tempdir().unwrap();
    sin_samples(dir.path());
    let o = bandlimit(&["differentiate", "-i", "sin.csv", "--tol", "1e-12"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    std::fs::write(dir.path().join("sin.json"), r#"{"h": 1.0, "k_min": -6000, "k_max": 6000, "tail_bound": 1}"#).unwrap();
    let o = bandlimit(&["differentiate", "-i", "sin.csv"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sigma"));
    std::fs::remove_file(dir.path().join("sin.json")).unwrap();
    let o = bandlimit(&["reconstruct", "-i", "sin.csv"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dht_orbit_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("e0.csv"), "n,value\n0,1\n").unwrap();
    std::fs::write(dir.path().join("e0.json"), r#"{"n0": 0, "len": 1, "tail_l2": 0}"#).unwrap();

    let o = bandlimit(&["dht", "orbit", "-i", "e0.csv", "-o", "one.csv", "--t", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(dir.path().join("one.csv")).unwrap();
    assert_eq!(footer(&text, "isometry_residual"), 0.0);
    assert_eq!(rows(&text), vec![vec![-1.0, -1.0]]);

    let o = bandlimit(&["dht", "orbit", "-i", "e0.csv", "-o", "half.csv", "--t", "0.5", "--expand", "40"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("half.csv")).unwrap();
    for r in rows(&text) {
        let exact = 1.0 / (std::f64::consts::PI * (r[0] + 0.5));
        assert!((r[1] - exact).abs() < 1e-15);
    }

    let o = bandlimit(&["dht", "power", "-i", "e0.csv", "-o", "p.csv", "--order", "1", "--tol", "1e-3", "--expand", "50"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("p.csv")).unwrap();
    assert!(footer(&text, "cross_check_apply") <= 1e-3);
    assert!(dir.path().join("p.json").exists());

    let o = bandlimit(&["dht", "vt", "-i", "e0.csv", "-o", "v.csv"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = bandlimit(&["verify", "favard", "--format", "json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "favard");
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    for c in checks {
        for key in ["name", "lhs", "rhs", "slack", "pass"] {
            assert!(c.get(key).is_some(), "{key}");
        }
        assert_eq!(c["pass"], true);
    }

    let o = bandlimit(&["verify", "pp", "--h", "4"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));

    let o = bandlimit(&["verify", "lks", "--seed", "7"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    // the rotation suite at a fixed K = 10⁴ misses 1e−6: the critical-rate tail is O(1/K)
    let o = bandlimit(&["verify", "group", "--kmax", "10000"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL reconstruct/t=0.7"));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = || stdout(&bandlimit(&["verify", "lks", "--seed", "3", "--format", "json"], dir.path()));
    assert_eq!(run(), run());
    sin_samples(dir.path());
    let diff = || stdout(&bandlimit(&["differentiate", "-i", "sin.csv", "--order", "2", "--tol", "1e-2", "--from", "0", "--to", "30"], dir.path()));
    let first = diff();
    assert!(first.contains("order=2"));
    assert_eq!(first, diff());
}
