//! Level files: a header `#bm α=<α> β=<β> count=<n>` followed by one
//! relation per line in canonical order, UTF-8 with LF line endings.

use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::relation::BMRelation;
use crate::square::Ambient;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelHeader {
    pub ambient: Ambient,
    pub count: u64,
}

impl LevelHeader {
    pub fn line(&self) -> String {
        format!("#bm α={} β={} count={}", self.ambient.alpha, self.ambient.beta, self.count)
    }

    pub fn parse(line: &str) -> Result<LevelHeader> {
        let bad = || Error::Parse(format!("bad header {line:?}; expected '#bm α=<α> β=<β> count=<n>'"));
        let rest = line.strip_prefix("#bm ").ok_or_else(bad)?;
        let fields: Vec<&str> = rest.split(' ').collect();
        let [a, b, c] = fields[..] else { return Err(bad()) };
        let num = |s: &str, key: &str| -> Result<u64> {
            let v = s.strip_prefix(key).ok_or_else(bad)?;
            if v.is_empty() || !v.bytes().all(|x| x.is_ascii_digit()) {
                return Err(bad());
            }
            v.parse().map_err(|_| bad())
        };
        let alpha = num(a, "α=")? as usize;
        let beta = num(b, "β=")? as usize;
        let count = num(c, "count=")?;
        Ok(LevelHeader { ambient: Ambient::new(alpha, beta)?, count })
    }
}

/// Conventional name of a `(1,β)` level file.
pub fn level_file_name(beta: usize) -> String {
    format!("r1_{beta}.bm")
}

pub fn level_path(dir: &Path, beta: usize) -> PathBuf {
    dir.join(level_file_name(beta))
}

pub fn write_level(mut w: impl Write, ambient: Ambient, relations: &[BMRelation]) -> std::io::Result<()> {
    let header = LevelHeader { ambient, count: relations.len() as u64 };
    writeln!(w, "{}", header.line())?;
    for r in relations {
        writeln!(w, "{r}")?;
    }
    w.flush()
}

pub fn serialize_level(ambient: Ambient, relations: &[BMRelation]) -> String {
    let mut buf = Vec::new();
    write_level(&mut buf, ambient, relations).expect("writing to memory");
    String::from_utf8(buf).expect("level text is UTF-8")
}

/// Writes the level to `path` and returns the SHA-256 of the bytes written.
pub fn save_level(path: &Path, ambient: Ambient, relations: &[BMRelation]) -> Result<String> {
    let text = serialize_level(ambient, relations);
    std::fs::write(path, text.as_bytes())?;
    Ok(sha256_hex(text.as_bytes()))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses a level file, validating every relation. Relations may be written
/// with any representatives and in any order; the result is sorted.
pub fn parse_level(text: &str) -> Result<(LevelHeader, Vec<BMRelation>)> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines.next().ok_or_else(|| Error::ParseAt { line: 1, msg: "empty level file".into() })?;
    let header = LevelHeader::parse(first).map_err(|e| e.at_line(1))?;
    let mut rels = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let r = BMRelation::parse_line(line, Some(header.ambient)).map_err(|e| e.at_line(i + 1))?;
        rels.push(r);
    }
    if rels.len() as u64 != header.count {
        return Err(Error::Corrupt(format!(
            "header announces {} relations but the file has {}",
            header.count,
            rels.len()
        )));
    }
    rels.sort_unstable();
    if let Some(w) = rels.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Corrupt(format!("duplicate relation {}", w[0])));
    }
    Ok((header, rels))
}

pub fn load_level(path: &Path) -> Result<(LevelHeader, Vec<BMRelation>)> {
    parse_level(&std::fs::read_to_string(path)?)
}

/// Strict check of the on-disk format: exact header, canonical text on
/// every line, canonical order, no duplicates, LF endings and a count that
/// matches the body. Returns the first problem found.
pub fn verify_level_text(text: &str) -> Result<LevelHeader> {
    if text.contains('\r') {
        return Err(Error::Corrupt("CR characters present; level files use LF line endings".into()));
    }
    if !text.ends_with('\n') {
        return Err(Error::Corrupt("file does not end with a newline".into()));
    }
    let mut lines = text.split_terminator('\n');
    let header = LevelHeader::parse(lines.next().unwrap_or_default()).map_err(|e| e.at_line(1))?;
    let mut prev: Option<BMRelation> = None;
    let mut count = 0u64;
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        let r = BMRelation::parse_line(line, Some(header.ambient))
            .map_err(|e| Error::Corrupt(format!("line {line_no}: {e}")))?;
        if r.to_string() != line {
            return Err(Error::Corrupt(format!("line {line_no}: not in canonical form (expected {r})")));
        }
        if let Some(p) = &prev {
            if *p >= r {
                return Err(Error::Corrupt(format!("line {line_no}: relations out of canonical order or repeated")));
            }
        }
        prev = Some(r);
        count += 1;
    }
    if count != header.count {
        return Err(Error::Corrupt(format!("header announces {} relations but the file has {count}", header.count)));
    }
    Ok(header)
}
