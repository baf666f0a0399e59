//! Run manifests: the effective arguments of a run plus content hashes of
//! its input and every file it wrote.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cli::Command;
use crate::error::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileRecord {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub file: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    /// Arguments with the seed filled in and the input path made absolute.
    pub args: Command,
    pub threads: usize,
    pub input: Option<FileRecord>,
    pub outputs: Vec<OutputRecord>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn sha256_file(path: &Path) -> Result<String> {
    std::fs::read(path).map(|b| sha256_hex(&b)).map_err(|e| Error::io(path, e))
}

impl Manifest {
    pub fn new(args: Command, threads: usize, input: Option<FileRecord>, dir: &Path, files: &[String]) -> Result<Self> {
        let outputs = files
            .iter()
            .map(|f| {
                sha256_file(&dir.join(f)).map(|sha256| OutputRecord {
                    file: f.clone(),
                    sha256,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Manifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            args,
            threads,
            input,
            outputs,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Manifest(format!("{}: {e}", path.display())))
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join(MANIFEST_FILE);
        crate::io::write_file(&path, |w| crate::report::write_json(self, w))
    }

    /// Compares recorded output hashes with the files now present in `dir`.
    pub fn verify_outputs(&self, dir: &Path) -> Result<()> {
        for out in &self.outputs {
            let now = sha256_file(&dir.join(&out.file))?;
            if now != out.sha256 {
                return Err(Error::Manifest(format!("{} differs from the recorded run", out.file)));
            }
        }
        Ok(())
    }
}
