use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use super::{check_cell, format_f64, read_text, write_text};
use crate::classify::ClassificationResult;
use crate::error::{FfpError, Result};

/// One line of a predictions file: `<id>,<label>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub id: String,
    pub label: String,
}

impl Prediction {
    pub fn new(id: impl Into<String>, label: impl Into<String>) -> Self {
        Prediction {
            id: id.into(),
            label: label.into(),
        }
    }
}

pub fn predictions_to_string(predictions: &[Prediction]) -> Result<String> {
    let mut out = String::new();
    for p in predictions {
        check_cell("instance id", &p.id)?;
        check_cell("label", &p.label)?;
        let _ = writeln!(out, "{},{}", p.id, p.label);
    }
    Ok(out)
}

pub fn predictions_from_str(text: &str) -> Result<Vec<Prediction>> {
    let mut out = Vec::new();
    let mut ids = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != 2 || cells[0].is_empty() || cells[1].is_empty() {
            return Err(FfpError::parse(n, "expected '<id>,<label>'"));
        }
        if !ids.insert(cells[0].to_string()) {
            return Err(FfpError::parse(n, format!("duplicate id '{}'", cells[0])));
        }
        out.push(Prediction::new(cells[0], cells[1]));
    }
    Ok(out)
}

pub fn read_predictions(path: impl AsRef<Path>) -> Result<Vec<Prediction>> {
    predictions_from_str(&read_text(path.as_ref())?)
}

pub fn write_predictions(predictions: &[Prediction], path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &predictions_to_string(predictions)?)
}

/// Per-instance score dump: header `id,predicted,tied,<class...>`, then one
/// row per instance with full-precision similarities in class order.
pub fn scores_to_string(results: &[(String, ClassificationResult)], classes: &[&str]) -> String {
    let mut out = String::from("id,predicted,tied");
    for c in classes {
        out.push(',');
        out.push_str(c);
    }
    out.push('\n');
    for (id, r) in results {
        let _ = write!(out, "{id},{},{}", r.predicted, r.tied);
        for (_, s) in &r.scores {
            out.push(',');
            out.push_str(&format_f64(*s));
        }
        out.push('\n');
    }
    out
}

pub fn write_scores(
    results: &[(String, ClassificationResult)],
    classes: &[&str],
    path: impl AsRef<Path>,
) -> Result<()> {
    write_text(path.as_ref(), &scores_to_string(results, classes))
}
