//! Harness plumbing shared by the CLI: instance generators, charged-cost
//! benchmarking with exponent fits, and the verification suites that bind
//! every oracle to its target.

pub mod bench;
pub mod gen;
pub mod verify;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::{Error, Result};

/// Outcome of one verification check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    /// One-line rendering: OK or FAIL, the check path, and the detail.
    pub fn line(&self) -> String {
        let tag = if self.passed { "OK" } else { "FAIL" };
        format!("{tag} {}/{}: {}", self.suite, self.name, self.detail)
    }
}

/// Parses a text file: the first line that is neither blank nor a comment
/// holds the text, restricted to printable single-byte symbols.
pub fn parse_text(content: &str) -> Result<Vec<u8>> {
    for (lineno, raw) in content.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bytes = line.as_bytes();
        if let Some(&bad) = bytes.iter().find(|&&b| !(0x21..=0x7e).contains(&b)) {
            return Err(Error::parse(format!(
                "line {}: byte 0x{bad:02x} is not a printable single-byte symbol",
                lineno + 1
            )));
        }
        return Ok(bytes.to_vec());
    }
    Err(Error::parse("no text line found in input"))
}

/// Reads a text file from disk.
pub fn read_text_file(path: &std::path::Path) -> Result<Vec<u8>> {
    let content = std::fs::read_to_string(path)?;
    parse_text(&content)
}

/// Runs `count` independent jobs across worker threads and returns results
/// in index order, so report assembly stays serialized and deterministic.
pub(crate) fn parallel_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if count == 0 {
        return Vec::new();
    }
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(count);
    let slots: Vec<Mutex<Option<T>>> = (0..count).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let out = f(i);
                *slots[i].lock().expect("result slot poisoned") = Some(out);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| {
            m.into_inner()
                .expect("result slot poisoned")
                .expect("every index was claimed by a worker")
        })
        .collect()
}
