//! Batch scan over all canonical gamma vectors up to a natural length.
//!
//! Records are written as JSON lines in canonical order. The file doubles as
//! the checkpoint: on restart the complete lines already present are checked
//! against the expected sequence, a torn final line is dropped, and the scan
//! continues after the last complete record.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use hodge_core::{
    canonical_gammas, hodge_vector_genfun, hodge_vector_zigzag, reduced_hodge_vector, GammaVector,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult, EXIT_DISAGREE, EXIT_VALIDATION, OUT_DIR_ENV};

/// Gamma vectors computed before each write.
const CHUNK: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub gamma: String,
    #[serde(rename = "L")]
    pub natural_length: u64,
    pub n: usize,
    pub hodge: Vec<u64>,
    pub primitive: bool,
    pub reduced_hodge: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSummary {
    pub path: PathBuf,
    pub already_present: usize,
    pub written: usize,
}

/// `scan-L{max_len}.jsonl` in the directory named by the environment
/// variable, or in the working directory.
pub fn default_output(max_len: u64) -> PathBuf {
    let dir = std::env::var_os(OUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_default();
    dir.join(format!("scan-L{max_len}.jsonl"))
}

/// Computes one record; `Err` carries the gamma whose methods disagree.
pub fn scan_record(g: &GammaVector) -> Result<ScanRecord, String> {
    let hodge = hodge_vector_zigzag(g);
    let check = hodge_vector_genfun(g);
    if hodge != check {
        return Err(format!("{g}: zigzag {hodge} but genfun {check}"));
    }
    let hd = g.to_datum();
    Ok(ScanRecord {
        gamma: g.to_string(),
        natural_length: g.natural_length(),
        n: g.n(),
        hodge: hodge.as_slice().to_vec(),
        primitive: hd.is_primitive(),
        reduced_hodge: reduced_hodge_vector(&hd)
            .ok()
            .map(|h| h.as_slice().to_vec()),
    })
}

/// Reads the complete records of an existing output file, truncating a torn
/// last line, and checks that they are a prefix of `expected`.
fn resume(path: &Path, expected: &[GammaVector]) -> CliResult<usize> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
        Err(e) => return Err(CliError::io(&path.display().to_string(), e)),
    };
    let complete = text.rfind('\n').map_or(0, |i| i + 1);
    if complete < text.len() {
        let file = OpenOptions::new()
            .write(true)
            .open(path)
            .map_err(|e| CliError::io(&path.display().to_string(), e))?;
        file.set_len(complete as u64)
            .map_err(|e| CliError::io(&path.display().to_string(), e))?;
    }
    let mut count = 0;
    for (i, line) in text[..complete].lines().enumerate() {
        let record: ScanRecord = serde_json::from_str(line).map_err(|e| {
            CliError::new(
                EXIT_VALIDATION,
                format!("{}: line {}: {e}", path.display(), i + 1),
            )
        })?;
        let want = expected.get(i).map(GammaVector::to_string);
        if want.as_deref() != Some(record.gamma.as_str()) {
            return Err(CliError::new(
                EXIT_VALIDATION,
                format!(
                    "{}: line {} holds {} but this scan expects {}",
                    path.display(),
                    i + 1,
                    record.gamma,
                    want.unwrap_or_else(|| "no more records".into())
                ),
            ));
        }
        count += 1;
    }
    Ok(count)
}

/// Runs the scan with `jobs` worker threads (0 picks the default).
pub fn run_scan(max_len: u64, path: &Path, jobs: usize) -> CliResult<ScanSummary> {
    if max_len == 0 {
        return Err(CliError::new(
            EXIT_VALIDATION,
            "maximal length must be at least 1",
        ));
    }
    let expected = canonical_gammas(max_len);
    let already_present = resume(path, &expected)?;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(&dir.display().to_string(), e))?;
    }
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| CliError::io(&path.display().to_string(), e))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::new(EXIT_VALIDATION, e.to_string()))?;

    let mut written = 0;
    for chunk in expected[already_present..].chunks(CHUNK) {
        let records: Vec<Result<ScanRecord, String>> =
            pool.install(|| chunk.par_iter().map(scan_record).collect());
        let mut buf = String::new();
        for record in records {
            let record = record.map_err(|msg| CliError::new(EXIT_DISAGREE, msg))?;
            buf.push_str(&serde_json::to_string(&record).expect("serializable"));
            buf.push('\n');
        }
        file.write_all(buf.as_bytes())
            .and_then(|_| file.flush())
            .map_err(|e| CliError::io(&path.display().to_string(), e))?;
        written += chunk.len();
    }
    Ok(ScanSummary {
        path: path.to_path_buf(),
        already_present,
        written,
    })
}
