use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub fn sha256_file(path: &Path) -> CliResult<String> {
    let mut f = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 1 << 16];
    loop {
        let k = f.read(&mut buf).map_err(|e| CliError::io(path, e))?;
        if k == 0 {
            break;
        }
        hasher.update(&buf[..k]);
    }
    Ok(hasher.finalize().iter().map(|b| format!("{b:02x}")).collect())
}

fn unix_now() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0)
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    subcommand: &'a str,
    tool_version: &'a str,
    seed: Option<u64>,
    parameters: &'a serde_json::Value,
    inputs: &'a BTreeMap<String, String>,
    outputs: &'a BTreeMap<String, String>,
    started_unix: f64,
    finished_unix: f64,
}

/// An output directory being filled by one run. Files are written through a
/// temporary file and renamed into place; `finish` writes `manifest.json`.
pub struct OutDir {
    dir: PathBuf,
    subcommand: &'static str,
    started: f64,
    inputs: BTreeMap<String, String>,
    outputs: BTreeMap<String, String>,
}

impl OutDir {
    /// Refuses a non-empty existing directory unless `force` is set.
    pub fn prepare(dir: &Path, force: bool, subcommand: &'static str) -> CliResult<Self> {
        if dir.exists() {
            let mut entries = std::fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
            if entries.next().is_some() && !force {
                return Err(CliError::usage(format!(
                    "output directory {} is not empty; pass --force to overwrite",
                    dir.display()
                )));
            }
        } else {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
        Ok(Self {
            dir: dir.to_path_buf(),
            subcommand,
            started: unix_now(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
        })
    }

    pub fn record_input(&mut self, path: &Path) -> CliResult<()> {
        let digest = sha256_file(path)?;
        self.inputs.insert(path.display().to_string(), digest);
        Ok(())
    }

    pub fn write<F>(&mut self, name: &str, body: F) -> CliResult<()>
    where
        F: FnOnce(&mut dyn Write) -> CliResult<()>,
    {
        let target = self.dir.join(name);
        let tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        {
            let mut w = BufWriter::new(tmp.as_file());
            body(&mut w)?;
            w.flush().map_err(|e| CliError::io(&target, e))?;
        }
        tmp.persist(&target).map_err(|e| CliError::io(&target, e.error))?;
        self.outputs.insert(name.to_string(), sha256_file(&target)?);
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> CliResult<()> {
        self.write(name, |w| {
            serde_json::to_writer_pretty(&mut *w, value)?;
            w.write_all(b"\n").map_err(|e| CliError::io(Path::new(name), e))
        })
    }

    pub fn finish<P: Serialize>(mut self, params: &P, seed: Option<u64>) -> CliResult<()> {
        let parameters = serde_json::to_value(params)?;
        let outputs = std::mem::take(&mut self.outputs);
        let inputs = std::mem::take(&mut self.inputs);
        let manifest = Manifest {
            subcommand: self.subcommand,
            tool_version: env!("CARGO_PKG_VERSION"),
            seed,
            parameters: &parameters,
            inputs: &inputs,
            outputs: &outputs,
            started_unix: self.started,
            finished_unix: unix_now(),
        };
        self.write_json("manifest.json", &manifest)
    }
}
