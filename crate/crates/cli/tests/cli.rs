use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn noon_sim(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noon-sim"))
        .args(args)
        .current_dir(dir)
        .env_remove("NOON_SIM_CONFIG")
        .output()
        .expect("binary runs")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(|x| x.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn sweep_writes_rows_and_manifest() {
    let dir = TempDir::new().unwrap();
    let out = noon_sim(dir.path(), &["sweep", "--output", "s.csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let (header, rows) = read_csv(&dir.path().join("s.csv"));
    assert_eq!(header, ["phi", "p11", "p20", "p02", "c_total_norm", "rho00", "n0", "n1", "n2"]);
    assert_eq!(rows.len(), 64);
    // pair absorption peaks at φ ≡ 0 (mod π); the raw vacuum column also
    // carries lone photons from the lossy arms, which fringe with an offset
    let peak = rows.iter().max_by(|a, b| a[6].total_cmp(&b[6])).unwrap();
    let folded = peak[0].rem_euclid(std::f64::consts::PI);
    assert!(folded.min(std::f64::consts::PI - folded) < 1e-9, "n0 peaks at {}", peak[0]);

    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("s.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["subcommand"], "sweep");
    assert_eq!(manifest["outputs"][0], "s.csv");
    assert_eq!(manifest["config"]["phase_steps"], 64);
    assert!(manifest["timestamp"].is_string());
}

#[test]
fn vacuum_peaks_at_zero_phase_without_arm_loss() {
    let dir = TempDir::new().unwrap();
    let arms = ["t_p1", "t_q1", "t_p2", "t_q2"].map(|k| format!("{k} = 0.0\n")).concat();
    std::fs::write(dir.path().join("c.toml"), arms).unwrap();
    assert!(noon_sim(dir.path(), &["sweep", "--config", "c.toml", "-o", "s.csv"]).status.success());
    let (_, rows) = read_csv(&dir.path().join("s.csv"));
    let peak = rows.iter().max_by(|a, b| a[5].total_cmp(&b[5])).unwrap();
    let folded = peak[0].rem_euclid(std::f64::consts::PI);
    assert!(folded.min(std::f64::consts::PI - folded) < 1e-9, "rho00 peaks at {}", peak[0]);
    for row in &rows {
        assert!((row[5] - row[6]).abs() < 1e-10, "rho00 and n0 differ at phi = {}", row[0]);
    }
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    for name in ["a.csv", "b.csv"] {
        assert!(noon_sim(dir.path(), &["sweep", "--steps", "200", "-o", name]).status.success());
    }
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn json_matches_csv() {
    let dir = TempDir::new().unwrap();
    assert!(noon_sim(dir.path(), &["sweep", "-o", "s.csv"]).status.success());
    assert!(noon_sim(dir.path(), &["sweep", "-o", "s.json", "--format", "json"]).status.success());

    let (header, rows) = read_csv(&dir.path().join("s.csv"));
    let json: Vec<serde_json::Map<String, serde_json::Value>> =
        serde_json::from_slice(&std::fs::read(dir.path().join("s.json")).unwrap()).unwrap();
    assert_eq!(json.len(), rows.len());
    for (obj, row) in json.iter().zip(&rows) {
        for (key, &v) in header.iter().zip(row) {
            let j = obj[key].as_f64().unwrap();
            assert!((j - v).abs() <= 1e-12, "{key}: {j} vs {v}");
        }
    }
}

#[test]
fn single_step_matches_direct_evolution() {
    let dir = TempDir::new().unwrap();
    let out = noon_sim(dir.path(), &["sweep", "--steps", "1", "--phase-start", "0.4", "-o", "one.csv"]);
    assert!(out.status.success());
    let (_, rows) = read_csv(&dir.path().join("one.csv"));
    assert_eq!(rows.len(), 1);

    let cfg = noon_sim::ExperimentConfig::default();
    let rho = noon_sim::evolve_pipeline(&cfg, 0.4).unwrap();
    assert_eq!(rows[0][0], 0.4);
    assert_eq!(rows[0][5], rho.population(0));
}

#[test]
fn negative_phase_flags_are_accepted() {
    let dir = TempDir::new().unwrap();
    let out =
        noon_sim(dir.path(), &["sweep", "--phase-start", "-1.5", "--phase-stop", "1.5", "--steps", "3", "-o", "s.csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (_, rows) = read_csv(&dir.path().join("s.csv"));
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), [-1.5, -0.5, 0.5]);
}

#[test]
fn malformed_config_exits_2_without_output() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("bad.toml"), "visibility = \n").unwrap();
    let out = noon_sim(dir.path(), &["sweep", "--config", "bad.toml", "-o", "s.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("s.csv").exists());
    assert!(!dir.path().join("s.csv.manifest.json").exists());

    std::fs::write(dir.path().join("typo.toml"), "visibilty = 0.5\n").unwrap();
    let out = noon_sim(dir.path(), &["sweep", "--config", "typo.toml", "-o", "s.csv"]);
    assert_eq!(out.status.code(), Some(2));

    let out = noon_sim(dir.path(), &["sweep", "--config", "missing.toml", "-o", "s.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("s.csv").exists());
}

#[test]
fn unphysical_beamsplitter_is_rejected_by_name() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("coh.toml"), "lbs_r_re = 0.5\nlbs_r_im = 0.0\nlbs_t_re = 0.6\n").unwrap();
    let out = noon_sim(dir.path(), &["verify", "--config", "coh.toml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2tr₀|cos θ| ≤ α"));

    std::fs::write(dir.path().join("gain.toml"), "lbs_r_re = 0.8\nlbs_r_im = 0.0\nlbs_t_re = 0.8\n").unwrap();
    let out = noon_sim(dir.path(), &["verify", "--config", "gain.toml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("|t|^2 + |r|^2 <= 1"));
}

#[test]
fn config_from_environment() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("c.toml"), "phase_steps = 5\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_noon-sim"))
        .args(["sweep", "-o", "s.csv"])
        .current_dir(dir.path())
        .env("NOON_SIM_CONFIG", "c.toml")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(read_csv(&dir.path().join("s.csv")).1.len(), 5);
}

#[test]
fn verify_default_passes() {
    let dir = TempDir::new().unwrap();
    let out = noon_sim(dir.path(), &["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for group in ["cptp", "oracle", "bounds", "fringe"] {
        assert!(text.contains(&format!("PASS {group}")), "{text}");
    }
}

#[test]
fn enhancement_panels() {
    let dir = TempDir::new().unwrap();
    assert!(noon_sim(dir.path(), &["enhancement", "-o", "e.csv"]).status.success());
    let mut r = csv::Reader::from_path(dir.path().join("e.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 14);
    let num = |rec: &csv::StringRecord, i: usize| rec[i].parse::<f64>().unwrap();
    for rec in rows.iter().filter(|r| &r[0] == "ideal") {
        assert_eq!(num(rec, 7), 2.0);
    }
    let ideal_n1 = rows.iter().find(|r| &r[0] == "ideal" && &r[1] == "1").unwrap();
    assert_eq!(num(ideal_n1, 4), 1.0);
    let config_n2 = rows.iter().find(|r| &r[0] == "config" && &r[1] == "2").unwrap();
    assert!((num(config_n2, 4) - 0.337).abs() < 1e-3);

    assert_eq!(noon_sim(dir.path(), &["enhancement", "--n-max", "8", "-o", "x.csv"]).status.code(), Some(2));
    assert!(!dir.path().join("x.csv").exists());
}

#[test]
fn zero_steps_rejected() {
    let dir = TempDir::new().unwrap();
    assert_eq!(noon_sim(dir.path(), &["sweep", "--steps", "0", "-o", "s.csv"]).status.code(), Some(2));
}
