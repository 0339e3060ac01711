//! Report serialization helpers and append-only report files.

use std::fs::OpenOptions;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use sha2::{Digest, Sha256};

/// A JSON number when the value fits in `i64`, otherwise its decimal string.
pub fn big_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(small) => serde_json::Value::from(small),
        None => serde_json::Value::String(v.to_string()),
    }
}

/// First 16 hex digits of the SHA-256 of `content`.
pub fn content_hash(content: &[u8]) -> String {
    let digest = Sha256::digest(content);
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn sanitize(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect()
}

/// File name `<subcommand>_<k>-<v>..._<hash>.<ext>`.
pub fn report_file_name(subcommand: &str, params: &[(&str, String)], content: &[u8], ext: &str) -> String {
    let mut name = sanitize(subcommand);
    for (k, v) in params {
        name.push('_');
        name.push_str(&sanitize(k));
        name.push('-');
        name.push_str(&sanitize(v));
    }
    format!("{name}_{}.{ext}", content_hash(content))
}

/// Writes `content` under `dir` and never replaces an existing file.
///
/// The name embeds the content hash, so an existing file of that name
/// already holds identical bytes and is left untouched.
pub fn write_report(
    dir: &Path,
    subcommand: &str,
    params: &[(&str, String)],
    content: &[u8],
    ext: &str,
) -> io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(report_file_name(subcommand, params, content, ext));
    match OpenOptions::new().write(true).create_new(true).open(&path) {
        Ok(mut file) => {
            file.write_all(content)?;
            file.sync_all()?;
            Ok(path)
        }
        Err(e) if e.kind() == io::ErrorKind::AlreadyExists => {
            if std::fs::read(&path)? == content {
                Ok(path)
            } else {
                Err(io::Error::new(io::ErrorKind::AlreadyExists, format!("{} holds different content", path.display())))
            }
        }
        Err(e) => Err(e),
    }
}
