use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "tilecheck-report/1";

/// Outcome classes; the exit code is a function of this alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    True,
    False,
    HypothesisViolation,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::True => 0,
            Status::False | Status::HypothesisViolation => 1,
            Status::Error => 2,
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::True
        } else {
            Status::False
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FileDigest {
    pub path: PathBuf,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: &Path, bytes: &[u8]) -> Self {
        FileDigest {
            path: path.to_path_buf(),
            sha256: sha256_hex(bytes),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// The deterministic part of a report.
#[derive(Debug, Clone, Serialize)]
pub struct Body {
    pub command: String,
    pub status: Status,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub result: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    #[serde(flatten)]
    pub body: Body,
    /// SHA-256 of the compact JSON encoding of the fields above.
    pub checksum: String,
    pub timing: Timing,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
    pub threads: usize,
}

impl Report {
    pub fn new(body: Body, elapsed: Duration) -> Self {
        let encoded = serde_json::to_vec(&body).expect("report bodies are plain JSON");
        Report {
            schema: SCHEMA,
            checksum: sha256_hex(&encoded),
            body,
            timing: Timing {
                elapsed_ms: elapsed.as_secs_f64() * 1e3,
                threads: rayon::current_num_threads(),
            },
        }
    }
}
