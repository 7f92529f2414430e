//! Deterministic run reports: an ordered list of `key: value` lines with a
//! fixed header, identical bytes for identical inputs, plus a SHA-256 input
//! digest helper. The machine-readable section parses back losslessly.

use crate::{Error, Result};
use sha2::{Digest, Sha256};

const HEADER: &str = "kappa-forge-report/1";

/// Ordered key-value report; rendering is byte-deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    lines: Vec<(String, String)>,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        let mut r = RunReport { lines: Vec::new() };
        r.push("command", command);
        r
    }

    /// Appends one line; newlines in values are flattened to keep the
    /// line-oriented format parseable.
    pub fn push(&mut self, key: &str, value: impl ToString) {
        let key = key.replace([':', '\n'], "-");
        let value = value.to_string().replace('\n', " ");
        self.lines.push((key, value));
    }

    pub fn push_digest(&mut self, input: &[u8]) {
        self.push("input-digest", sha256_hex(input));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn lines(&self) -> &[(String, String)] {
        &self.lines
    }

    pub fn render(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        for (k, v) in &self.lines {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<RunReport> {
        let mut it = text.lines();
        if it.next() != Some(HEADER) {
            return Err(Error::InvalidInput("missing report header".into()));
        }
        let mut lines = Vec::new();
        for line in it {
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once(": ")
                .or_else(|| line.split_once(':'))
                .ok_or_else(|| Error::InvalidInput(format!("bad report line {line:?}")))?;
            lines.push((k.to_string(), v.to_string()));
        }
        Ok(RunReport { lines })
    }
}

/// Lowercase hex SHA-256 of the input.
pub fn sha256_hex(input: &[u8]) -> String {
    let digest = Sha256::digest(input);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
