//! Data files and their manifests.

use std::ffi::OsString;
use std::io;
use std::path::{Path, PathBuf};

use noon_sim::{ConfigFile, EnhancementRow, SweepRecord};
use serde::{Deserialize, Serialize};

pub const SWEEP_COLUMNS: [&str; 9] = ["phi", "p11", "p20", "p02", "c_total_norm", "rho00", "n0", "n1", "n2"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub phi: f64,
    pub p11: f64,
    pub p20: f64,
    pub p02: f64,
    pub c_total_norm: f64,
    pub rho00: f64,
    pub n0: f64,
    pub n1: f64,
    pub n2: f64,
}

impl SweepRow {
    fn values(&self) -> [f64; 9] {
        [self.phi, self.p11, self.p20, self.p02, self.c_total_norm, self.rho00, self.n0, self.n1, self.n2]
    }

    pub fn is_finite(&self) -> bool {
        self.values().iter().all(|v| v.is_finite())
    }
}

impl From<&SweepRecord> for SweepRow {
    fn from(r: &SweepRecord) -> Self {
        Self {
            phi: r.phi,
            p11: r.probs.p11,
            p20: r.probs.p20,
            p02: r.probs.p02,
            c_total_norm: r.c_total_norm,
            rho00: r.rho00,
            n0: r.amplitudes.n0,
            n1: r.amplitudes.n1,
            n2: r.amplitudes.n2,
        }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
fn full(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SWEEP_COLUMNS)?;
    for row in rows {
        w.write_record(row.values().map(full))?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

pub fn sweep_json(rows: &[SweepRow]) -> Result<Vec<u8>, serde_json::Error> {
    let mut out = serde_json::to_vec_pretty(rows)?;
    out.push(b'\n');
    Ok(out)
}

pub fn enhancement_csv(rows: &[(&str, EnhancementRow)]) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["panel", "n", "gamma", "delta", "p_noon_max", "p_noon_min", "p_independent", "ratio"])?;
    for (panel, r) in rows {
        let mut record = vec![panel.to_string(), r.n.to_string()];
        record.extend([r.gamma, r.delta, r.p_noon_max, r.p_noon_min, r.p_independent, r.ratio()].map(full));
        w.write_record(&record)?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub timestamp: String,
    pub config_path: Option<PathBuf>,
    pub config: ConfigFile,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(subcommand: &str, config_path: Option<&Path>, config: &ConfigFile) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            subcommand: subcommand.into(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            config_path: config_path.map(Path::to_path_buf),
            config: config.clone(),
            outputs: Vec::new(),
        }
    }
}

/// `results.csv` → `results.csv.manifest.json`
pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().map(OsString::from).unwrap_or_default();
    name.push(".manifest.json");
    output.with_file_name(name)
}

/// Writes through a temporary file so a failed run never leaves a partial
/// output behind.
pub fn write_with_manifest(output: &Path, data: &[u8], mut manifest: RunManifest) -> io::Result<()> {
    let mut tmp = output.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, data)?;
    std::fs::rename(&tmp, output)?;

    manifest.outputs.push(output.to_path_buf());
    let json = serde_json::to_vec_pretty(&manifest).map_err(io::Error::other)?;
    std::fs::write(manifest_path(output), json)
}
