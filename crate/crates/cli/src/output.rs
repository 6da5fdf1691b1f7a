use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use tempfile::NamedTempFile;

use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance recorded in every output file.
#[derive(Clone, Debug, Serialize)]
pub struct Stamp {
    pub version: &'static str,
    pub config_hash: String,
    pub seed: u64,
}

impl Stamp {
    pub fn new(config_hash: String, seed: u64) -> Self {
        Self { version: VERSION, config_hash, seed }
    }

    pub fn comment_line(&self) -> String {
        format!("# torelli-sieve {} config_hash={} seed={}\n", self.version, self.config_hash, self.seed)
    }
}

/// Files staged in memory and written together once a command succeeds.
pub struct Outputs {
    dir: PathBuf,
    files: Vec<(String, Vec<u8>)>,
}

impl Outputs {
    pub fn new(dir: &Path) -> Self {
        Self { dir: dir.to_path_buf(), files: Vec::new() }
    }

    pub fn add(&mut self, name: &str, contents: Vec<u8>) {
        self.files.push((name.to_string(), contents));
    }

    pub fn add_text(&mut self, name: &str, stamp: &Stamp, body: &str) {
        self.add(name, format!("{}{body}", stamp.comment_line()).into_bytes());
    }

    pub fn add_csv<R: Serialize>(&mut self, name: &str, stamp: &Stamp, rows: &[R]) -> Result<(), CliError> {
        let mut buf = stamp.comment_line().into_bytes();
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            for r in rows {
                w.serialize(r).map_err(|e| CliError::Runtime(e.to_string()))?;
            }
            w.flush().map_err(|e| CliError::Runtime(e.to_string()))?;
        }
        self.add(name, buf);
        Ok(())
    }

    pub fn add_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Runtime(e.to_string()))?;
        text.push('\n');
        self.add(name, text.into_bytes());
        Ok(())
    }

    /// Writes each file to a temporary sibling, then renames all of them
    /// into place.
    pub fn commit(self) -> Result<Vec<PathBuf>, CliError> {
        let io = |e: std::io::Error| CliError::Runtime(format!("{}: {e}", self.dir.display()));
        std::fs::create_dir_all(&self.dir).map_err(io)?;
        let mut staged = Vec::new();
        for (name, contents) in &self.files {
            let mut tmp = NamedTempFile::new_in(&self.dir).map_err(io)?;
            tmp.write_all(contents).map_err(io)?;
            tmp.as_file().sync_all().map_err(io)?;
            staged.push((tmp, self.dir.join(name)));
        }
        let mut written = Vec::new();
        for (tmp, path) in staged {
            tmp.persist(&path).map_err(|e| CliError::Runtime(format!("{}: {}", path.display(), e.error)))?;
            written.push(path);
        }
        Ok(written)
    }
}
