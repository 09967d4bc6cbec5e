//! Run manifests and atomic artifact writing. Artifacts are deterministic
//! given (command, seed, budget); the manifest carries hashes plus wall time
//! and is written last.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct Manifest {
    pub command: Vec<String>,
    pub seed: u64,
    pub budget: u64,
    pub version: String,
    /// Generator contract: ChaCha12 keyed by the little-endian 64-bit seed,
    /// zero padded to the 32-byte key, starting at stream position 0.
    pub prng: String,
    pub input_hashes: BTreeMap<String, String>,
    pub output_hashes: BTreeMap<String, String>,
    pub wall_time_ms: u128,
}

pub struct Runner {
    out_dir: PathBuf,
    started: Instant,
    manifest: Manifest,
    echo_json: bool,
}

impl Runner {
    pub fn new(out_dir: PathBuf, seed: u64, budget: u64, echo_json: bool) -> Result<Self> {
        std::fs::create_dir_all(&out_dir)
            .with_context(|| format!("creating output directory {}", out_dir.display()))?;
        Ok(Runner {
            out_dir,
            started: Instant::now(),
            manifest: Manifest {
                command: std::env::args().collect(),
                seed,
                budget,
                version: env!("CARGO_PKG_VERSION").to_owned(),
                prng: "chacha12/le-u64-key-zero-padded/stream0".to_owned(),
                input_hashes: BTreeMap::new(),
                output_hashes: BTreeMap::new(),
                wall_time_ms: 0,
            },
            echo_json,
        })
    }

    pub fn record_input(&mut self, path: &Path) -> Result<Vec<u8>> {
        let bytes =
            std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.manifest
            .input_hashes
            .insert(path.display().to_string(), hex_sha256(&bytes));
        Ok(bytes)
    }

    /// Serialize, write atomically, hash, optionally echo to stdout.
    pub fn write_artifact<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut json = serde_json::to_string_pretty(value)?;
        json.push('\n');
        let path = self.out_dir.join(name);
        write_atomic(&path, json.as_bytes())?;
        self.manifest
            .output_hashes
            .insert(name.to_owned(), hex_sha256(json.as_bytes()));
        if self.echo_json {
            print!("{json}");
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.manifest.wall_time_ms = self.started.elapsed().as_millis();
        let mut json = serde_json::to_string_pretty(&self.manifest)?;
        json.push('\n');
        write_atomic(&self.out_dir.join("manifest.json"), json.as_bytes())
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().context("artifact path has no parent")?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path)
        .with_context(|| format!("persisting {}", path.display()))?;
    Ok(())
}

pub fn hex_sha256(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let digest = h.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}
