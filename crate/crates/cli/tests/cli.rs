use std::path::Path;
use std::process::{Command, Output};

fn mertens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mertens"))
        .args(args)
        .env_remove("MERTENS_ZEROS_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn bundled_zeros() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/zeros")
        .display()
        .to_string()
}

#[test]
fn scan_to_ten_sees_four_primes() {
    let o = mertens(&["scan", "--xmax", "10"]);
    assert!(o.status.success());
    let r = rows(&stdout(&o));
    let last = r.last().unwrap();
    assert_eq!(last[0], "10");
    assert_eq!(last[1], "4");
}

#[test]
fn scan_rows_are_positive() {
    let o = mertens(&["scan", "--xmax", "1000000", "--grid", "geometric:1.01"]);
    assert!(o.status.success());
    for row in rows(&stdout(&o)) {
        for v in &row[8..11] {
            assert!(v.parse::<f64>().unwrap() > 0.0, "{row:?}");
        }
    }
}

#[test]
fn bad_output_path_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.csv");
    let o = mertens(&["scan", "--xmax", "100", "--out", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!target.exists());
    let o = mertens(&["scan", "--xmax", "100", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn out_of_range_arguments() {
    assert_eq!(mertens(&["scan", "--xmax", "2000000000"]).status.code(), Some(2));
    assert_eq!(mertens(&["meanvalues", "--xmax", "1999"]).status.code(), Some(2));
    assert_eq!(mertens(&["bchi", "--d", "9"]).status.code(), Some(2));
    assert_eq!(mertens(&["scan", "--xmax", "100", "--workers", "0"]).status.code(), Some(2));
}

#[test]
fn meanvalues_single_row_at_2000() {
    let o = mertens(&["meanvalues", "--xmax", "2000"]);
    assert!(o.status.success());
    assert_eq!(rows(&stdout(&o)).len(), 1);
}

#[test]
fn meanvalues_to_a_million() {
    let o = mertens(&["meanvalues", "--xmax", "1000000", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    let edge = 2.0 + 0.046191417932;
    let gamma: f64 = 0.5772156649015329;
    for r in rows {
        assert!(r["f1"].as_f64().unwrap() > 0.0 && r["f2"].as_f64().unwrap() > 0.0);
        let mid = (-gamma).exp() * r["int_E3_identity"].as_f64().unwrap();
        let d1 = r["delta1"].as_f64().unwrap();
        let d2 = r["delta2"].as_f64().unwrap();
        assert!(d1 < mid && mid < d1 + d2, "{r}");
    }
    let last = rows.last().unwrap();
    assert_eq!(last["X"].as_f64().unwrap(), 1e6);
    assert!(last["f1"].as_f64().unwrap() > edge && last["f2"].as_f64().unwrap() > edge);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "xmax = 10\ngrid = \"linear:1\"\n").unwrap();
    let o = mertens(&["scan", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success());
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 9);
    let o = mertens(&["scan", "--config", cfg.to_str().unwrap(), "--xmax", "20"]);
    assert_eq!(rows(&stdout(&o)).last().unwrap()[1], "8");
}

#[test]
fn worker_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for w in ["1", "4"] {
        let path = dir.path().join(format!("scan{w}.csv"));
        let o = mertens(&["scan", "--xmax", "3000000", "--workers", w, "--out", path.to_str().unwrap()]);
        assert!(o.status.success());
        let path2 = dir.path().join(format!("bchi{w}.csv"));
        let o = mertens(&["bchi", "--bound", "200", "--workers", w, "--out", path2.to_str().unwrap()]);
        assert!(o.status.success());
        files.push((std::fs::read(path).unwrap(), std::fs::read(path2).unwrap()));
    }
    assert!(files[0] == files[1]);
}

#[test]
fn table_d_has_178_rows_and_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.csv");
    let o = mertens(&["tables", "d", "--bound", "1300", "--diff", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(rows(&text).len(), 178);
    assert!(dir.path().join("d.certificates.json").exists());
    assert!(!dir.path().join("d.undecided.csv").exists());
}

#[test]
fn table_q_has_24_rows() {
    let dir = tempfile::tempdir().unwrap();
    let link = dir.path().join("link.csv");
    std::os::unix::fs::symlink(dir.path().join("target.csv"), &link).unwrap();
    for bad in [dir.path(), link.as_path()] {
        let o = mertens(&["tables", "q", "--bound", "100", "--out", bad.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2));
    }
    assert!(!dir.path().join("target.csv").exists());
    let out = dir.path().join("q.csv");
    let o = mertens(&["tables", "q", "--bound", "100", "--diff", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let qs: Vec<String> = rows(&std::fs::read_to_string(&out).unwrap())
        .into_iter()
        .map(|r| r[0].clone())
        .collect();
    assert_eq!(
        qs.join(" "),
        "2 3 4 5 6 7 8 9 10 12 14 15 16 18 20 21 24 28 30 36 40 42 48 60"
    );
}

#[test]
fn table3_from_bundled_zeros() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t3.csv");
    let zeros = bundled_zeros();
    let o = mertens(&["tables", "table3", "--bound", "24", "--diff", "--zeros-dir", &zeros, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let pairs: Vec<String> = rows(&std::fs::read_to_string(&out).unwrap())
        .into_iter()
        .map(|r| format!("{}:{}", r[0], r[1]))
        .collect();
    for p in ["3:1", "4:1", "5:1", "5:4", "8:1", "12:1", "24:1"] {
        assert!(pairs.contains(&p.to_string()), "{pairs:?}");
    }
    assert!(dir.path().join("t3.calibration.txt").exists());
}

#[test]
fn table3_without_zero_data_is_undecided() {
    let dir = tempfile::tempdir().unwrap();
    let o = mertens(&["tables", "table3", "--zeros-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn zeta_scan_to_100() {
    let o = mertens(&["zeros", "scan", "--tmax", "100"]);
    assert!(o.status.success());
    let ordinates: Vec<f64> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.parse().unwrap())
        .collect();
    assert_eq!(ordinates.len(), 29);
    assert!((ordinates[0] - 14.134725141734693).abs() < 1e-8);
}

#[test]
fn corrupted_zero_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("z.zeros");
    let o = mertens(&["zeros", "scan", "--tmax", "40", "--out", good.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&good).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines[3] = "21.0x2";
    let bad = dir.path().join("bad.zeros");
    std::fs::write(&bad, lines.join("\n")).unwrap();
    let o = mertens(&["zeros", "validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.zeros:4:"), "{err}");
}

#[test]
fn ingest_round_trip_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let raw = dir.path().join("raw.zeros");
    // the bundled list cut at 30, with fewer digits and loose whitespace
    let bundled = std::fs::read_to_string(Path::new(&bundled_zeros()).join("d5.zeros")).unwrap();
    let mut text = String::from("# discriminant: 5\n# t_max: 30\n");
    for l in bundled.lines().filter(|l| !l.starts_with('#')) {
        let g: f64 = l.trim().parse().unwrap();
        if g <= 30.0 {
            text.push_str(&format!("  {g:.9} \n"));
        }
    }
    std::fs::write(&raw, text).unwrap();
    let a = dir.path().join("a.zeros");
    let b = dir.path().join("b.zeros");
    let o = mertens(&["zeros", "ingest", raw.to_str().unwrap(), "--out", a.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = mertens(&["zeros", "ingest", a.to_str().unwrap(), "--out", b.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let o = mertens(&["zeros", "validate", b.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("ok chi_5"));
}

#[test]
fn check_reports_each_selected_criterion() {
    let o = mertens(&["check", "--only", "3"]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("criterion  3"), "{err}");
    let expected = if err.contains("PASS") { 0 } else { 5 };
    assert_eq!(o.status.code(), Some(expected));
    assert_eq!(mertens(&["check", "--only", "12"]).status.code(), Some(2));
}
