//! Result persistence: CSV tables plus a JSON run manifest carrying the
//! fully-resolved configuration, its digest, seeds and the crate version.
//! Identical config + seed reproduces identical CSV bytes; wall-clock
//! timestamps live only in the manifest.

use crate::error::Result;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Run manifest written next to every result table.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    /// Fully-resolved configuration (defaults filled in by the caller).
    pub config: serde_json::Value,
    /// Digest of `config`; changes iff the config changes.
    pub digest: String,
    pub seed: u64,
    pub version: String,
    /// Milliseconds since the epoch; the only nondeterministic field.
    pub created_unix_ms: u64,
}

impl Manifest {
    pub fn new(config: serde_json::Value, seed: u64) -> Manifest {
        let digest = config_digest(&config);
        Manifest {
            config,
            digest,
            seed,
            version: env!("CARGO_PKG_VERSION").to_owned(),
            created_unix_ms: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_millis() as u64)
                .unwrap_or(0),
        }
    }
}

/// SHA-256 hex digest of the canonical (sorted-key) JSON serialization.
pub fn config_digest(config: &serde_json::Value) -> String {
    // serde_json::Value objects are BTreeMaps, so to_string is canonical
    let canonical = config.to_string();
    let mut h = Sha256::new();
    h.update(canonical.as_bytes());
    hex_string(&h.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

/// Serialize rows to CSV at `path` (creating parent directories).
pub fn write_csv_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut wtr = csv::Writer::from_writer(fs::File::create(path)?);
    for row in rows {
        wtr.serialize(row)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Append rows to a CSV ledger, writing the header only when the file is new
/// (used by the Pickands ledger for bias-trend plots across runs).
pub fn append_csv_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let exists = path.exists() && fs::metadata(path)?.len() > 0;
    let file = fs::OpenOptions::new().create(true).append(true).open(path)?;
    let mut wtr = csv::WriterBuilder::new()
        .has_headers(!exists)
        .from_writer(file);
    for row in rows {
        wtr.serialize(row)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Write the manifest as pretty JSON.
pub fn write_manifest(path: &Path, manifest: &Manifest) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut f = fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut f, manifest)?;
    f.write_all(b"\n")?;
    Ok(())
}

/// Write a report's CSV and its manifest into `out_dir`; returns the CSV and
/// manifest paths.
pub fn persist_results<T: Serialize>(
    out_dir: &Path,
    csv_name: &str,
    rows: &[T],
    manifest: &Manifest,
) -> Result<(PathBuf, PathBuf)> {
    let csv_path = out_dir.join(csv_name);
    write_csv_rows(&csv_path, rows)?;
    let manifest_path = out_dir.join("manifest.json");
    write_manifest(&manifest_path, manifest)?;
    Ok((csv_path, manifest_path))
}
