//! Line-oriented cache files for coefficient tables.
//!
//! Layout: `# key=value` header lines (format, kind, weight for the GL(2)
//! family, n_max, checksum), then one `n value` body line per coefficient
//! with the value in shortest round-trip decimal. The checksum is the
//! SHA-256 of the body bytes, so truncation or edits are rejected before any
//! value is parsed. Bi-index values are never stored: the first row
//! determines them.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::tables::{CoefficientTable, FormDescriptor, FormKind};
use crate::error::{Error, Result};

pub const CACHE_FORMAT_VERSION: u32 = 1;

pub fn save_cache(table: &CoefficientTable, path: impl AsRef<Path>) -> Result<()> {
    let row = table.first_row();
    let mut body = String::new();
    for (n, value) in row.iter().enumerate().skip(1) {
        writeln!(body, "{n} {value}").expect("string write");
    }
    let mut head = String::new();
    writeln!(head, "# format={CACHE_FORMAT_VERSION}").expect("string write");
    writeln!(head, "# kind={}", table.descriptor().kind.name()).expect("string write");
    if let FormKind::Gl2Holomorphic { weight } = table.descriptor().kind {
        writeln!(head, "# weight={weight}").expect("string write");
    }
    writeln!(head, "# n_max={}", table.n_max()).expect("string write");
    writeln!(head, "# checksum={}", hex_digest(body.as_bytes())).expect("string write");
    fs::write(path, head + &body)?;
    Ok(())
}

pub fn load_cache(path: impl AsRef<Path>) -> Result<CoefficientTable> {
    let text = fs::read_to_string(path)?;
    let mut format = None;
    let mut kind = None;
    let mut weight = None;
    let mut n_max = None;
    let mut checksum = None;
    let mut rest = text.as_str();
    while rest.starts_with('#') {
        let line_end = rest.find('\n').map_or(rest.len(), |i| i + 1);
        let line = rest[..line_end].trim_end();
        rest = &rest[line_end..];
        let Some((key, value)) = line[1..].trim().split_once('=') else {
            return Err(Error::CacheFormat(format!("malformed header line: {line}")));
        };
        match key.trim() {
            "format" => format = Some(value.to_owned()),
            "kind" => kind = Some(value.to_owned()),
            "weight" => weight = Some(value.to_owned()),
            "n_max" => n_max = Some(value.to_owned()),
            "checksum" => checksum = Some(value.to_owned()),
            other => return Err(Error::CacheFormat(format!("unknown header key: {other}"))),
        }
    }
    let format = format.ok_or_else(|| Error::CacheFormat("missing format header".into()))?;
    if format != CACHE_FORMAT_VERSION.to_string() {
        return Err(Error::CacheFormat(format!(
            "unsupported format version {format}, expected {CACHE_FORMAT_VERSION}"
        )));
    }
    let recorded = checksum.ok_or_else(|| Error::CacheFormat("missing checksum header".into()))?;
    if hex_digest(rest.as_bytes()) != recorded {
        return Err(Error::CacheChecksum);
    }

    let descriptor = match kind.as_deref() {
        Some("gl2_holomorphic") => {
            let w: u32 = weight
                .as_deref()
                .unwrap_or("12")
                .parse()
                .map_err(|_| Error::CacheFormat("bad weight header".into()))?;
            FormDescriptor {
                kind: FormKind::Gl2Holomorphic { weight: w },
                ..FormDescriptor::gl2()
            }
        }
        Some("gl3_sym2") => FormDescriptor::sym2(),
        Some("gl3_eisenstein_d3") => FormDescriptor::d3(),
        Some(other) => return Err(Error::CacheFormat(format!("unknown kind: {other}"))),
        None => return Err(Error::CacheFormat("missing kind header".into())),
    };
    let n_max: usize = n_max
        .ok_or_else(|| Error::CacheFormat("missing n_max header".into()))?
        .parse()
        .map_err(|_| Error::CacheFormat("bad n_max header".into()))?;

    let mut row = vec![0.0f64; n_max + 1];
    let mut expected = 1usize;
    for line in rest.lines() {
        let Some((idx, value)) = line.split_once(' ') else {
            return Err(Error::CacheFormat(format!("malformed body line: {line}")));
        };
        let idx: usize = idx
            .parse()
            .map_err(|_| Error::CacheFormat(format!("bad index: {idx}")))?;
        if idx != expected {
            return Err(Error::CacheFormat(format!(
                "body line out of order: got {idx}, expected {expected}"
            )));
        }
        if idx > n_max {
            return Err(Error::CacheFormat("more body lines than n_max".into()));
        }
        row[idx] = value
            .parse()
            .map_err(|_| Error::CacheFormat(format!("bad value: {value}")))?;
        expected += 1;
    }
    if expected != n_max + 1 {
        return Err(Error::CacheFormat(format!(
            "body ended at {} of {n_max} lines",
            expected - 1
        )));
    }
    CoefficientTable::new(descriptor, row)
}

fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in digest {
        write!(s, "{b:02x}").expect("string write");
    }
    s
}
