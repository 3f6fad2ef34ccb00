//! Structured reports: a versioned, deterministic JSON document per
//! invocation, keyed by a digest of the exact inputs.

use serde::Serialize;

/// The structured result of one command.
///
/// Serialization is deterministic: field order is fixed, map keys are
/// sorted, and nothing time- or machine-dependent is included, so
/// identical inputs produce byte-identical reports.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub digest: String,
    pub results: serde_json::Value,
}

impl Report {
    pub fn new(command: impl Into<String>, digest: String, results: serde_json::Value) -> Self {
        Report { schema: 1, command: command.into(), digest, results }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// 64-bit FNV-1a over a byte string.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Digest of the invocation inputs: the parts are joined with NUL
/// separators (which cannot occur inside them) and hashed.
pub fn input_digest(parts: &[&str]) -> String {
    let mut bytes = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        if i > 0 {
            bytes.push(0);
        }
        bytes.extend_from_slice(part.as_bytes());
    }
    format!("{:016x}", fnv1a64(&bytes))
}
