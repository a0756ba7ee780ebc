use std::fs::File;
use std::io::{self, Read};
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct InputFile {
    pub role: &'static str,
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: Value,
    pub config_sha256: String,
    pub inputs: Vec<InputFile>,
    pub outputs: Vec<String>,
    pub counts: Map<String, Value>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn file_checksum(path: &Path) -> io::Result<(String, u64)> {
    let mut file = File::open(path)?;
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    let mut total = 0u64;
    loop {
        let n = file.read(&mut buf)?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
        total += n as u64;
    }
    Ok((hex::encode(hasher.finalize()), total))
}

impl Manifest {
    pub fn new(command: &'static str, config: Value) -> Self {
        let config_sha256 = sha256_hex(config.to_string().as_bytes());
        Manifest {
            tool: "scm",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            config_sha256,
            inputs: Vec::new(),
            outputs: Vec::new(),
            counts: Map::new(),
        }
    }

    pub fn add_input(&mut self, role: &'static str, path: &Path) -> io::Result<()> {
        let (sha256, bytes) = file_checksum(path)?;
        self.inputs.push(InputFile {
            role,
            path: path.display().to_string(),
            sha256,
            bytes,
        });
        Ok(())
    }

    /// Records a bundled default that stands in for an input file.
    pub fn add_builtin(&mut self, role: &'static str, name: &str, contents: &str) {
        self.inputs.push(InputFile {
            role,
            path: format!("<builtin>/{name}"),
            sha256: sha256_hex(contents.as_bytes()),
            bytes: contents.len() as u64,
        });
    }

    pub fn count(&mut self, key: &str, value: impl Into<Value>) {
        self.counts.insert(key.to_owned(), value.into());
    }
}
