//! `latticeset/1` point-set files.
//!
//! The writer emits one canonical byte sequence per point set: a fixed header
//! order, two-space indentation and one point per line. Loading canonicalizes
//! (sorts, merges duplicates), so `store(load(f))` is the canonical form of `f`.

use std::fmt::Write as _;
use std::path::Path;

use latticeset::{LatticePoint, PointSet};
use serde::Deserialize;

use crate::CliError;

pub const FORMAT: &str = "latticeset/1";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format: String,
    d: usize,
    n: i64,
    points: Vec<Vec<i64>>,
}

pub fn to_string(ps: &PointSet) -> String {
    let mut s = format!("{{\n  \"format\": \"{FORMAT}\",\n  \"d\": {},\n  \"n\": {},\n", ps.d(), ps.n());
    if ps.is_empty() {
        s.push_str("  \"points\": []\n}\n");
        return s;
    }
    s.push_str("  \"points\": [\n");
    for (i, p) in ps.points().iter().enumerate() {
        s.push_str("    [");
        for (j, c) in p.coords().iter().enumerate() {
            if j > 0 {
                s.push_str(", ");
            }
            write!(s, "{c}").unwrap();
        }
        s.push(']');
        if i + 1 < ps.len() {
            s.push(',');
        }
        s.push('\n');
    }
    s.push_str("  ]\n}\n");
    s
}

pub fn from_str(text: &str) -> Result<PointSet, CliError> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("malformed point file: {e}")))?;
    if raw.format != FORMAT {
        return Err(CliError::Usage(format!("unsupported format {:?}, expected {FORMAT:?}", raw.format)));
    }
    let points = raw.points.into_iter().map(LatticePoint::new).collect();
    PointSet::new(raw.d, raw.n, points).map_err(|e| CliError::Usage(format!("invalid point file: {e}")))
}

pub fn load(path: &Path) -> Result<PointSet, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    from_str(&text)
}

pub fn store(ps: &PointSet, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, to_string(ps)).map_err(|e| CliError::io(path.display().to_string(), e))
}
