//! Fingerprint library file.
//!
//! JSON with a format version, the shared parameters, the class order and,
//! per class, `[feature, membership]` pairs ordered by descending membership
//! then ascending feature:
//!
//! ```text
//! {
//!   "version": 1,
//!   "dim": 768,
//!   "k": 7,
//!   "a": 0.8,
//!   "norm": 7.0,
//!   "class_order": ["Neu", "Ang"],
//!   "fingerprints": [
//!     {
//!       "label": "Neu",
//!       "entries": [
//!         [217, 1.0],
//!         [644, 0.8857142857142857],
//! ...
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use super::{read_text, write_text};
use crate::error::{FfpError, Result};
use crate::fingerprint::{canonical_order, fuzzify, ClassFingerprint, Entry, FingerprintParams};
use crate::library::FingerprintLibrary;

pub const LIBRARY_FORMAT_VERSION: u32 = 1;

/// Loaded memberships may differ from recomputed ones by this much.
const MEMBERSHIP_TOLERANCE: f64 = 1e-9;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LibraryFile {
    version: u32,
    dim: usize,
    k: usize,
    a: f64,
    norm: f64,
    class_order: Vec<String>,
    fingerprints: Vec<FingerprintRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FingerprintRecord {
    label: String,
    entries: Vec<(usize, f64)>,
}

fn json<T: serde::Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain values serialize")
}

pub fn library_to_string(lib: &FingerprintLibrary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"version\": {LIBRARY_FORMAT_VERSION},");
    let _ = writeln!(out, "  \"dim\": {},", lib.dim());
    let _ = writeln!(out, "  \"k\": {},", lib.k());
    let _ = writeln!(out, "  \"a\": {},", json(&lib.a()));
    let _ = writeln!(out, "  \"norm\": {},", json(&lib.norm()));
    let _ = writeln!(out, "  \"class_order\": {},", json(&lib.class_order()));
    let _ = writeln!(out, "  \"fingerprints\": [");
    let n = lib.fingerprints().len();
    for (i, fp) in lib.fingerprints().iter().enumerate() {
        let _ = writeln!(out, "    {{");
        let _ = writeln!(out, "      \"label\": {},", json(fp.label()));
        let _ = writeln!(out, "      \"entries\": [");
        let m = fp.entries().len();
        for (j, e) in fp.entries().iter().enumerate() {
            let sep = if j + 1 < m { "," } else { "" };
            let _ = writeln!(out, "        [{}, {}]{sep}", e.feature, json(&e.membership));
        }
        let _ = writeln!(out, "      ]");
        let sep = if i + 1 < n { "," } else { "" };
        let _ = writeln!(out, "    }}{sep}");
    }
    let _ = writeln!(out, "  ]");
    let _ = writeln!(out, "}}");
    out
}

pub fn library_from_str(text: &str) -> Result<FingerprintLibrary> {
    let file: LibraryFile = serde_json::from_str(text).map_err(|e| FfpError::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let bad = |msg: String| FfpError::LibraryFormat(msg);

    if file.version != LIBRARY_FORMAT_VERSION {
        return Err(bad(format!(
            "unsupported version {} (expected {LIBRARY_FORMAT_VERSION})",
            file.version
        )));
    }
    if file.fingerprints.is_empty() {
        return Err(bad("library holds no fingerprints".into()));
    }
    if file.dim == 0 {
        return Err(bad("dim must be positive".into()));
    }
    let params = FingerprintParams::new(file.k, file.a).map_err(|e| bad(e.to_string()))?;
    if !(file.norm.is_finite() && file.norm > 0.0) {
        return Err(bad(format!("norm must be positive, got {}", file.norm)));
    }

    let mut labels = HashSet::new();
    for rec in &file.fingerprints {
        if !labels.insert(rec.label.as_str()) {
            return Err(bad(format!("duplicate label '{}'", rec.label)));
        }
    }
    let order_set: HashSet<&str> = file.class_order.iter().map(String::as_str).collect();
    if order_set.len() != file.class_order.len() || order_set != labels {
        return Err(bad(
            "class_order must list every fingerprint label exactly once".into(),
        ));
    }

    let size = params.size_for(file.dim);
    let mut fingerprints = Vec::with_capacity(file.fingerprints.len());
    for rec in &file.fingerprints {
        if rec.entries.len() != size {
            return Err(bad(format!(
                "'{}' has {} entries, expected {size}",
                rec.label,
                rec.entries.len()
            )));
        }
        let mut entries: Vec<Entry> = rec
            .entries
            .iter()
            .map(|&(feature, membership)| Entry {
                feature,
                membership,
            })
            .collect();
        for e in &entries {
            if !(e.membership > 0.0 && e.membership <= 1.0) {
                return Err(bad(format!(
                    "'{}' feature {} has membership {} outside (0, 1]",
                    rec.label, e.feature, e.membership
                )));
            }
        }
        entries.sort_by(canonical_order);
        for (pos, e) in entries.iter().enumerate() {
            let expected = fuzzify(pos + 1, params.k(), params.a())?;
            if (e.membership - expected).abs() > MEMBERSHIP_TOLERANCE {
                return Err(bad(format!(
                    "'{}' rank {} membership {} does not match {expected}",
                    rec.label,
                    pos + 1,
                    e.membership
                )));
            }
        }
        let ranked: Vec<usize> = entries.iter().map(|e| e.feature).collect();
        let fp =
            ClassFingerprint::from_ranked_features(rec.label.clone(), file.dim, params, &ranked)
                .map_err(|e| bad(format!("'{}': {e}", rec.label)))?;
        fingerprints.push(fp);
    }
    FingerprintLibrary::new(fingerprints, file.norm)
        .and_then(|lib| lib.with_class_order(&file.class_order))
        .map_err(|e| bad(e.to_string()))
}

pub fn save_library(lib: &FingerprintLibrary, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &library_to_string(lib))
}

pub fn load_library(path: impl AsRef<Path>) -> Result<FingerprintLibrary> {
    library_from_str(&read_text(path.as_ref())?)
}
