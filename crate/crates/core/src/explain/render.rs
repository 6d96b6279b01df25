use std::fmt::Write as _;

use crate::classify::ClassificationResult;
use crate::dataio::format_f64;
use crate::error::{FfpError, Result};
use crate::fingerprint::ClassFingerprint;
use crate::library::FingerprintLibrary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RenderStyle {
    /// `{(feature,membership),...}` best rank first, two decimals.
    #[default]
    RankOrdered,
    /// One `index membership` line per cell, absent cells as 0.
    Dense,
}

/// Two decimals with trailing zeros dropped: `1`, `0.89`, `0.5`.
pub fn format_membership(m: f64) -> String {
    let s = format!("{m:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

pub fn render_fingerprint(fp: &ClassFingerprint, style: RenderStyle) -> String {
    match style {
        RenderStyle::RankOrdered => {
            let pairs: Vec<String> = fp
                .entries()
                .iter()
                .map(|e| format!("({},{})", e.feature, format_membership(e.membership)))
                .collect();
            format!("{{{}}}", pairs.join(","))
        }
        RenderStyle::Dense => {
            let mut out = String::new();
            for (i, m) in fp.to_dense().into_iter().enumerate() {
                let _ = writeln!(out, "{i} {}", format_f64(m));
            }
            out
        }
    }
}

/// Parses the rank-ordered form back into `(feature, membership)` pairs.
pub fn parse_rank_ordered(text: &str) -> Result<Vec<(usize, f64)>> {
    let bad = || FfpError::parse(0, format!("not a rank-ordered fingerprint: '{text}'"));
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(bad)?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split("),")
        .map(|pair| {
            let pair = pair.trim().trim_start_matches('(').trim_end_matches(')');
            let (f, m) = pair.split_once(',').ok_or_else(bad)?;
            Ok((
                f.trim().parse().map_err(|_| bad())?,
                m.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}

/// One `FFP_<label> = {...}` line per class, in class order.
pub fn render_library(lib: &FingerprintLibrary) -> String {
    let width = lib.class_order().iter().map(|l| l.len()).max().unwrap_or(0);
    let mut out = String::new();
    for fp in lib.fingerprints() {
        let _ = writeln!(
            out,
            "FFP_{:<width$} = {}",
            fp.label(),
            render_fingerprint(fp, RenderStyle::RankOrdered)
        );
    }
    out
}

/// `Neu=0 *Ang=0.35* Dis=0 ...`, marking `highlight` with asterisks.
pub fn render_similarities(scores: &[(String, f64)], highlight: Option<&str>) -> String {
    scores
        .iter()
        .map(|(label, s)| {
            let cell = format!("{label}={}", format_membership(*s));
            if Some(label.as_str()) == highlight {
                format!("*{cell}*")
            } else {
                cell
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Classification example block: optional text, the instance fingerprint
/// and the similarity to every class.
pub fn render_classification(
    text: Option<&str>,
    instance: &ClassFingerprint,
    result: &ClassificationResult,
) -> String {
    let mut out = String::new();
    if let Some(t) = text {
        let _ = writeln!(out, "Text: {t}");
    }
    let _ = writeln!(
        out,
        "FFP_{} = {}",
        instance.label(),
        render_fingerprint(instance, RenderStyle::RankOrdered)
    );
    let _ = writeln!(
        out,
        "Similarity: {}{}",
        render_similarities(&result.scores, Some(&result.predicted)),
        if result.tied { " (tied)" } else { "" }
    );
    out
}
