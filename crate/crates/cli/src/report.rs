use std::path::Path;

use cyclocover::{Error, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "cyclocover-report/1";

/// Reads JSON inputs and remembers a digest of every file it touched.
#[derive(Default)]
pub struct Inputs {
    seen: Vec<(String, String)>,
}

impl Inputs {
    pub fn read(&mut self, path: &Path) -> Result<Value> {
        let bytes =
            std::fs::read(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        let digest = Sha256::digest(&bytes);
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        let name = path.display().to_string();
        if !self.seen.iter().any(|(p, _)| *p == name) {
            self.seen.push((name, hex));
        }
        serde_json::from_slice(&bytes).map_err(|e| Error::input(format!("{}: {e}", path.display())))
    }

    pub fn digest(&self) -> Value {
        Value::Array(
            self.seen
                .iter()
                .map(|(p, h)| json!({ "path": p, "sha256": h }))
                .collect(),
        )
    }
}

pub fn report(command: &[String], inputs: &Inputs, results: Value, warnings: &[String]) -> Value {
    json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "inputs": inputs.digest(),
        "results": results,
        "warnings": warnings,
    })
}
